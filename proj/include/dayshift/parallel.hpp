#pragma once

// Fan-out over independent jobs. Jobs must write only to their own slots;
// under that contract the result is identical for any worker count.

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dayshift {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

inline void parallel_for(std::size_t n_jobs, int n_workers, const std::function<void(std::size_t)>& job) {
  n_workers = resolve_workers(n_workers);
  if (static_cast<std::size_t>(n_workers) > n_jobs) n_workers = static_cast<int>(n_jobs);

  if (n_workers <= 1) {
    for (std::size_t i = 0; i < n_jobs; ++i) job(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_jobs) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n_jobs, std::memory_order_relaxed);  // drain remaining work
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(n_workers));
  for (int t = 0; t < n_workers; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dayshift
