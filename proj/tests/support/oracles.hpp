#pragma once

// Independent oracles used to verify library results. These deliberately take
// different computational routes from the implementations they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace oracles {

// ROC AUC by exhaustive positive-negative pair counting, ties worth 1/2.
inline double roc_auc_bruteforce(std::span<const double> scores, std::span<const int> labels) {
  double wins = 0.0;
  std::int64_t pairs = 0;
  for (std::size_t p = 0; p < scores.size(); ++p) {
    if (labels[p] != 1) continue;
    for (std::size_t n = 0; n < scores.size(); ++n) {
      if (labels[n] != 0) continue;
      ++pairs;
      if (scores[p] > scores[n]) wins += 1.0;
      else if (scores[p] == scores[n]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

// Average precision by direct per-positive rank counting (no sorting). The
// rank of element i counts strictly higher scores plus equal scores at or
// before i in input order, matching a stable descending sort.
inline double pr_auc_direct(std::span<const double> scores, std::span<const int> labels) {
  std::int64_t n_pos = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    ++n_pos;
    std::int64_t rank = 0, hits = 0;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      const bool above = scores[j] > scores[i] || (scores[j] == scores[i] && j <= i);
      if (above) {
        ++rank;
        if (labels[j] == 1) ++hits;
      }
    }
    sum += static_cast<double>(hits) / static_cast<double>(rank);
  }
  return sum / static_cast<double>(n_pos);
}

// MCC straight from the definition, in extended precision.
inline double mcc_direct(std::int64_t tp, std::int64_t fp, std::int64_t fn, std::int64_t tn) {
  const long double den = std::sqrt(static_cast<long double>(tp + fp) * static_cast<long double>(tp + fn) *
                                    static_cast<long double>(tn + fp) * static_cast<long double>(tn + fn));
  if (den == 0.0L) return 0.0;
  const long double num = static_cast<long double>(tp) * tn - static_cast<long double>(fp) * fn;
  return static_cast<double>(num / den);
}

// Two-sample Kolmogorov-Smirnov distance: sup |F_a - F_b|.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double best = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double v = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= v) ++ia;
    while (ib < b.size() && b[ib] <= v) ++ib;
    best = std::max(best, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  return best;
}

// Two-sided binomial sign-test p-value for `positives` successes in `n`
// trials under p = 1/2.
inline double sign_test_p(int positives, int n) {
  auto binom_cdf = [&](int upto) {
    long double total = 0.0L;
    for (int k = 0; k <= upto; ++k) {
      long double c = 1.0L;
      for (int i = 0; i < k; ++i) c = c * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
      total += c;
    }
    return total / std::pow(2.0L, static_cast<long double>(n));
  };
  const int lo = std::min(positives, n - positives);
  const long double tail = binom_cdf(lo);
  return static_cast<double>(std::min(1.0L, 2.0L * tail));
}

}  // namespace oracles
