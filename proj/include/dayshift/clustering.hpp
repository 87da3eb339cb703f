#pragma once

// Agglomerative clustering over the day-distance matrix: dendrogram
// construction, flat cuts, the inter-cluster-distance diagnostic curve, and
// Adjusted Rand Index for comparing partitions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dayshift/dates.hpp"
#include "dayshift/errors.hpp"
#include "dayshift/shiftmatrix.hpp"
#include "dayshift/util.hpp"

namespace dayshift {

enum class Linkage { kAverage, kSingle, kComplete };

inline std::string_view linkage_name(Linkage l) {
  switch (l) {
    case Linkage::kAverage: return "average";
    case Linkage::kSingle: return "single";
    case Linkage::kComplete: return "complete";
  }
  return "?";
}

inline Linkage parse_linkage(std::string_view s) {
  if (s == "average") return Linkage::kAverage;
  if (s == "single") return Linkage::kSingle;
  if (s == "complete") return Linkage::kComplete;
  throw ConfigError("unknown linkage: '" + std::string(s) + "' (expected average|single|complete)");
}

struct Merge {
  int left = 0;   // node ids: leaves are 0..n-1, merge t creates node n+t
  int right = 0;
  double height = 0.0;
  int size = 0;   // leaves under the merged node
};

struct Dendrogram {
  int n_leaves = 0;
  std::vector<Merge> merges;  // exactly n_leaves - 1, heights non-decreasing

  void validate() const {
    if (merges.size() + 1 != static_cast<std::size_t>(n_leaves)) {
      throw DataError("dendrogram must contain exactly n-1 merges");
    }
    std::vector<bool> used(static_cast<std::size_t>(2 * n_leaves - 1), false);
    for (std::size_t t = 0; t < merges.size(); ++t) {
      const Merge& m = merges[t];
      const int next_id = n_leaves + static_cast<int>(t);
      for (int child : {m.left, m.right}) {
        if (child < 0 || child >= next_id) throw DataError("dendrogram merge references an invalid node");
        if (used[static_cast<std::size_t>(child)]) throw DataError("dendrogram node used as child twice");
        used[static_cast<std::size_t>(child)] = true;
      }
      if (t > 0 && m.height < merges[t - 1].height) {
        throw DataError("dendrogram heights must be non-decreasing");
      }
    }
  }
};

struct ClusterAssignment {
  int k = 0;
  std::vector<int> labels;  // per day, in [0, k); canonical (cluster 0 holds day 0)
  std::vector<Date> day_dates;
};

namespace cluster_detail {

// Canonical labels: clusters are numbered by their earliest member day.
inline void canonicalize(std::vector<int>& labels, int k) {
  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (int& l : labels) {
    if (remap[static_cast<std::size_t>(l)] < 0) remap[static_cast<std::size_t>(l)] = next++;
    l = remap[static_cast<std::size_t>(l)];
  }
}

}  // namespace cluster_detail

/// Bottom-up agglomeration over the clamped distance matrix. Ties on merge
/// distance resolve to the pair with the lowest smallest-member indices, so
/// the result is fully deterministic. Average linkage (the default) yields
/// monotone non-decreasing merge heights.
inline Dendrogram agglomerate(const ShiftMatrix& matrix, Linkage linkage = Linkage::kAverage) {
  const int n = matrix.n_days;
  if (n < 2) throw DataError("agglomerate: need at least 2 days");
  matrix.validate();

  const auto un = static_cast<std::size_t>(n);
  std::vector<double> d(matrix.dist);  // working copy, indexed by cluster slot
  struct Cluster {
    int node_id;     // dendrogram node id
    int min_member;  // smallest day index inside
    int size;
  };
  std::vector<Cluster> clusters(un);
  std::vector<int> active;  // slots ordered by min_member (slot == initial day)
  active.reserve(un);
  for (int i = 0; i < n; ++i) {
    clusters[static_cast<std::size_t>(i)] = {i, i, 1};
    active.push_back(i);
  }

  Dendrogram out;
  out.n_leaves = n;
  out.merges.reserve(un - 1);

  for (int step = 0; step < n - 1; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 0;
    for (std::size_t ai = 0; ai + 1 < active.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < active.size(); ++bi) {
        const double dist = d[static_cast<std::size_t>(active[ai]) * un + static_cast<std::size_t>(active[bi])];
        if (dist < best) {  // strict: first (lowest-index) pair wins ties
          best = dist;
          best_a = ai;
          best_b = bi;
        }
      }
    }

    const int sa = active[best_a];
    const int sb = active[best_b];
    Cluster& ca = clusters[static_cast<std::size_t>(sa)];
    Cluster& cb = clusters[static_cast<std::size_t>(sb)];

    // Average linkage is monotone up to rounding; clamp sub-ulp dips so the
    // non-decreasing invariant holds exactly.
    double height = best;
    if (!out.merges.empty() && linkage == Linkage::kAverage) {
      height = std::max(height, out.merges.back().height);
    }
    out.merges.push_back({ca.node_id, cb.node_id, height, ca.size + cb.size});

    for (int slot : active) {
      if (slot == sa || slot == sb) continue;
      const auto us = static_cast<std::size_t>(slot);
      const double da = d[static_cast<std::size_t>(sa) * un + us];
      const double db = d[static_cast<std::size_t>(sb) * un + us];
      double merged;
      switch (linkage) {
        case Linkage::kAverage:
          merged = (da * ca.size + db * cb.size) / (ca.size + cb.size);
          break;
        case Linkage::kSingle:
          merged = std::min(da, db);
          break;
        case Linkage::kComplete:
          merged = std::max(da, db);
          break;
      }
      d[static_cast<std::size_t>(sa) * un + us] = merged;
      d[us * un + static_cast<std::size_t>(sa)] = merged;
    }

    ca.node_id = n + step;
    ca.size += cb.size;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
  }

  out.validate();
  return out;
}

/// Flat partition from undoing the last k-1 merges; labels are canonical.
inline ClusterAssignment cut(const Dendrogram& dendro, int k, std::vector<Date> day_dates = {}) {
  const int n = dendro.n_leaves;
  if (k < 1 || k > n) throw std::invalid_argument("cut: k must lie in [1, n]");

  // Union-find over the first n-k merges.
  std::vector<int> parent(static_cast<std::size_t>(2 * n - 1));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int t = 0; t < n - k; ++t) {
    const Merge& m = dendro.merges[static_cast<std::size_t>(t)];
    const int id = n + t;
    parent[static_cast<std::size_t>(find(m.left))] = id;
    parent[static_cast<std::size_t>(find(m.right))] = id;
  }

  std::vector<int> root_label(static_cast<std::size_t>(2 * n - 1), -1);
  std::vector<int> labels(static_cast<std::size_t>(n));
  int next = 0;
  for (int day = 0; day < n; ++day) {
    const int root = find(day);
    if (root_label[static_cast<std::size_t>(root)] < 0) root_label[static_cast<std::size_t>(root)] = next++;
    labels[static_cast<std::size_t>(day)] = root_label[static_cast<std::size_t>(root)];
  }
  // Roots are discovered in day order, so labels are already canonical.
  return ClusterAssignment{k, std::move(labels), std::move(day_dates)};
}

/// Average distance over all day pairs in different clusters, for each k in
/// [2, k_max]. This is the elbow diagnostic for choosing k.
inline std::vector<std::pair<int, double>> intercluster_curve(const ShiftMatrix& matrix,
                                                              const Dendrogram& dendro, int k_max) {
  const int n = matrix.n_days;
  if (k_max < 2 || k_max > n) throw std::invalid_argument("intercluster_curve: k_max must lie in [2, n]");
  std::vector<std::pair<int, double>> curve;
  curve.reserve(static_cast<std::size_t>(k_max - 1));
  for (int k = 2; k <= k_max; ++k) {
    const ClusterAssignment assignment = cut(dendro, k);
    double sum = 0.0;
    std::int64_t count = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (assignment.labels[static_cast<std::size_t>(i)] != assignment.labels[static_cast<std::size_t>(j)]) {
          sum += matrix.at(i, j);
          ++count;
        }
      }
    }
    curve.emplace_back(k, count > 0 ? sum / static_cast<double>(count) : 0.0);
  }
  return curve;
}

/// Adjusted Rand Index between a computed assignment and reference labels.
inline double compare_assignments(const ClusterAssignment& a, std::span<const int> truth) {
  const std::size_t n = a.labels.size();
  if (truth.size() != n) throw std::invalid_argument("compare_assignments: length mismatch");
  if (n == 0) throw std::invalid_argument("compare_assignments: empty partitions");

  int ka = 0, kb = 0;
  for (int l : a.labels) ka = std::max(ka, l + 1);
  for (int l : truth) kb = std::max(kb, l + 1);
  std::vector<std::int64_t> table(static_cast<std::size_t>(ka) * static_cast<std::size_t>(kb), 0);
  std::vector<std::int64_t> row(static_cast<std::size_t>(ka), 0), col(static_cast<std::size_t>(kb), 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++table[static_cast<std::size_t>(a.labels[i]) * static_cast<std::size_t>(kb) + static_cast<std::size_t>(truth[i])];
    ++row[static_cast<std::size_t>(a.labels[i])];
    ++col[static_cast<std::size_t>(truth[i])];
  }

  auto choose2 = [](std::int64_t x) { return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1); };
  double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (std::int64_t c : table) sum_cells += choose2(c);
  for (std::int64_t r : row) sum_rows += choose2(r);
  for (std::int64_t c : col) sum_cols += choose2(c);
  const double total = choose2(static_cast<std::int64_t>(n));
  const double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;  // both partitions trivial
  return (sum_cells - expected) / (max_index - expected);
}

/// Restricts clustering to the first n_early days, then assigns each later day
/// to the cluster with the smallest average distance to its members.
inline ClusterAssignment assign_no_leak(const ShiftMatrix& matrix, int k, int n_early,
                                        Linkage linkage = Linkage::kAverage) {
  const int n = matrix.n_days;
  if (n_early < 2 || n_early > n) throw InfeasibleError("assign_no_leak: n_early must lie in [2, n_days]");
  if (k > n_early) throw InfeasibleError("assign_no_leak: k exceeds the pre-test day count");

  ShiftMatrix early;
  early.n_days = n_early;
  const auto ue = static_cast<std::size_t>(n_early);
  early.dist.resize(ue * ue);
  early.raw.resize(ue * ue);
  for (int i = 0; i < n_early; ++i) {
    for (int j = 0; j < n_early; ++j) {
      early.dist[static_cast<std::size_t>(i) * ue + static_cast<std::size_t>(j)] = matrix.at(i, j);
      early.raw[static_cast<std::size_t>(i) * ue + static_cast<std::size_t>(j)] = matrix.raw_at(i, j);
    }
  }
  if (!matrix.day_dates.empty()) {
    early.day_dates.assign(matrix.day_dates.begin(), matrix.day_dates.begin() + n_early);
  }

  const ClusterAssignment seed = cut(agglomerate(early, linkage), k);

  std::vector<std::vector<int>> members(static_cast<std::size_t>(k));
  for (int day = 0; day < n_early; ++day) members[static_cast<std::size_t>(seed.labels[static_cast<std::size_t>(day)])].push_back(day);

  std::vector<int> labels(static_cast<std::size_t>(n));
  std::copy(seed.labels.begin(), seed.labels.end(), labels.begin());
  for (int day = n_early; day < n; ++day) {
    int best_cluster = 0;
    double best_avg = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      double sum = 0.0;
      for (int m : members[static_cast<std::size_t>(c)]) sum += matrix.at(day, m);
      const double avg = sum / static_cast<double>(members[static_cast<std::size_t>(c)].size());
      if (avg < best_avg) {  // ties keep the lowest cluster label
        best_avg = avg;
        best_cluster = c;
      }
    }
    labels[static_cast<std::size_t>(day)] = best_cluster;
  }
  cluster_detail::canonicalize(labels, k);
  return ClusterAssignment{k, std::move(labels), matrix.day_dates};
}

// --- exports -------------------------------------------------------------------

/// Newick text with branch lengths derived from merge heights (leaves at 0).
inline std::string to_newick(const Dendrogram& dendro, const std::vector<Date>& day_dates) {
  const int n = dendro.n_leaves;
  auto leaf_name = [&](int id) {
    return day_dates.empty() ? "d" + std::to_string(id) : day_dates[static_cast<std::size_t>(id)].iso();
  };
  auto node_height = [&](int id) {
    return id < n ? 0.0 : dendro.merges[static_cast<std::size_t>(id - n)].height;
  };
  // Iterative post-order render to keep deep dendrograms off the call stack.
  std::vector<std::string> rendered(static_cast<std::size_t>(2 * n - 1));
  for (int id = 0; id < n; ++id) rendered[static_cast<std::size_t>(id)] = leaf_name(id);
  for (std::size_t t = 0; t < dendro.merges.size(); ++t) {
    const Merge& m = dendro.merges[t];
    const double h = m.height;
    const int id = n + static_cast<int>(t);
    rendered[static_cast<std::size_t>(id)] = "(" + rendered[static_cast<std::size_t>(m.left)] + ":" +
                                             format_double(h - node_height(m.left)) + "," +
                                             rendered[static_cast<std::size_t>(m.right)] + ":" +
                                             format_double(h - node_height(m.right)) + ")";
  }
  return rendered.back() + ";\n";
}

inline void save_assignment(const ClusterAssignment& a, const std::filesystem::path& path) {
  if (a.day_dates.size() != a.labels.size()) throw DataError("assignment has no dates to export");
  std::string text = "date,cluster\n";
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    text += a.day_dates[i].iso();
    text += ',';
    text += std::to_string(a.labels[i]);
    text += '\n';
  }
  write_text_file(path, text);
}

inline ClusterAssignment load_assignment(const std::filesystem::path& path) {
  auto lines = split_lines(read_text_file(path));
  if (lines.empty() || lines[0] != "date,cluster") {
    throw DataError(path.string() + ": expected 'date,cluster' header");
  }
  ClusterAssignment a;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split(lines[i], ',');
    if (fields.size() != 2) throw DataError(path.string() + ":" + std::to_string(i + 1) + ": bad row");
    a.day_dates.push_back(Date::parse(fields[0]));
    a.labels.push_back(static_cast<int>(parse_int(fields[1], "cluster")));
    a.k = std::max(a.k, a.labels.back() + 1);
  }
  if (a.labels.empty()) throw DataError(path.string() + ": no assignment rows");
  return a;
}

/// Weekly text grid of cluster ids: one row per ISO week, columns MON..SUN.
inline std::string weekly_grid(const ClusterAssignment& a) {
  if (a.day_dates.size() != a.labels.size() || a.day_dates.empty()) {
    throw DataError("weekly grid needs dated assignments");
  }
  std::string out = "week  MON  TUE  WED  THU  FRI  SAT  SUN\n";
  std::size_t i = 0;
  while (i < a.day_dates.size()) {
    const int week = a.day_dates[i].iso_week();
    std::array<std::string, 7> cells;
    cells.fill(".");
    while (i < a.day_dates.size() && a.day_dates[i].iso_week() == week) {
      cells[static_cast<std::size_t>(a.day_dates[i].weekday_mon0())] = std::to_string(a.labels[i]);
      ++i;
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "%-4d", week);
    out += buf;
    for (const std::string& c : cells) {
      out += "  ";
      out += c;
      out += std::string(3 - std::min<std::size_t>(3, c.size()), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

}  // namespace dayshift
