#pragma once

// From-scratch random forest for binary targets over mixed feature types.
//
// Trees are CART-style: Gini impurity decrease, continuous splits at midpoints
// between consecutive distinct values, categorical splits as binary level
// subsets chosen by a sweep over levels ordered by class-1 proportion. Split
// comparison uses exact integer arithmetic, so equal-gain ties resolve by the
// documented order (lowest feature index, then smallest threshold / smallest
// subset) independent of floating-point rounding.
//
// Determinism: tree t draws from a stream derived from (params.seed, t), so a
// fit is reproducible for any worker count. Bootstrap resampling happens after
// the table-level overload canonically sorts rows by row id, which makes the
// model invariant to the presentation order of (row, label) pairs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dayshift/errors.hpp"
#include "dayshift/parallel.hpp"
#include "dayshift/rng.hpp"
#include "dayshift/schema.hpp"
#include "dayshift/table.hpp"
#include "dayshift/util.hpp"

namespace dayshift {

struct ForestParams {
  int n_trees = 100;
  int n_features_per_split = 0;  // 0 = floor(sqrt(feature count)), else fixed
  int min_samples_leaf = 10;
  std::uint64_t seed = 0;
  bool bootstrap = true;

  void validate() const {
    if (n_trees < 1) throw std::invalid_argument("n_trees must be positive");
    if (n_features_per_split < 0) throw std::invalid_argument("n_features_per_split must be >= 0");
    if (min_samples_leaf < 1) throw std::invalid_argument("min_samples_leaf must be positive");
  }

  int resolve_features_per_split(std::size_t n_features) const {
    int k = n_features_per_split;
    if (k <= 0) k = static_cast<int>(std::sqrt(static_cast<double>(n_features)));
    return std::clamp(k, 1, static_cast<int>(n_features));
  }

  bool operator==(const ForestParams&) const = default;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  std::int32_t left = -1, right = -1;
  double threshold = 0.0;                   // continuous split: value <= threshold goes left
  std::vector<std::uint16_t> left_levels;   // categorical split: sorted levels going left
  std::int64_t count0 = 0, count1 = 0;      // leaf training counts

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at index 0

  int vote(std::span<const double> row, const FeatureSchema& schema) const {
    const TreeNode* node = &nodes[0];
    while (!node->is_leaf()) {
      const auto f = static_cast<std::size_t>(node->feature);
      bool go_left;
      if (schema.at(f).kind == FeatureKind::kContinuous) {
        go_left = row[f] <= node->threshold;
      } else {
        go_left = std::binary_search(node->left_levels.begin(), node->left_levels.end(),
                                     static_cast<std::uint16_t>(row[f]));
      }
      node = &nodes[static_cast<std::size_t>(go_left ? node->left : node->right)];
    }
    return node->count1 >= node->count0 ? 1 : 0;  // leaf tie votes class 1
  }
};

inline double gini_impurity(std::int64_t c0, std::int64_t c1) {
  if (c0 < 0 || c1 < 0 || c0 + c1 == 0) throw std::invalid_argument("gini_impurity: need a non-empty count pair");
  const double n = static_cast<double>(c0 + c1);
  const double p0 = static_cast<double>(c0) / n;
  const double p1 = static_cast<double>(c1) / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

namespace forest_detail {

using u128 = unsigned __int128;

// Children are compared by sum(children) of n_child * (1 - gini), i.e.
// S = a/nl + b/nr with a = c0l^2 + c1l^2 and b the right-hand analogue.
// Maximizing S minimizes the weighted child impurity exactly.
struct ChildScore {
  std::int64_t a = 0, b = 0, nl = 0, nr = 0;
};

inline bool score_better(const ChildScore& x, const ChildScore& y) {
  const u128 lhs = (static_cast<u128>(x.a) * static_cast<u128>(x.nr) +
                    static_cast<u128>(x.b) * static_cast<u128>(x.nl)) *
                   (static_cast<u128>(y.nl) * static_cast<u128>(y.nr));
  const u128 rhs = (static_cast<u128>(y.a) * static_cast<u128>(y.nr) +
                    static_cast<u128>(y.b) * static_cast<u128>(y.nl)) *
                   (static_cast<u128>(x.nl) * static_cast<u128>(x.nr));
  return lhs > rhs;
}

inline bool positive_gain(const ChildScore& x, std::int64_t parent_sq, std::int64_t m) {
  const u128 lhs = (static_cast<u128>(x.a) * static_cast<u128>(x.nr) +
                    static_cast<u128>(x.b) * static_cast<u128>(x.nl)) *
                   static_cast<u128>(m);
  const u128 rhs = static_cast<u128>(parent_sq) * (static_cast<u128>(x.nl) * static_cast<u128>(x.nr));
  return lhs > rhs;
}

struct BestSplit {
  bool found = false;
  int feature = -1;
  bool categorical = false;
  double threshold = 0.0;
  std::vector<std::uint16_t> left_levels;
  ChildScore score;
  std::int64_t c0_left = 0, c1_left = 0;
};

struct ValueLabel {
  double v;
  std::uint8_t y;
};

class TreeBuilder {
 public:
  TreeBuilder(const FeatureSchema& schema, const std::vector<double>& values,
              std::span<const std::uint8_t> labels, const ForestParams& params)
      : schema_(schema),
        values_(values),
        labels_(labels),
        params_(params),
        n_rows_(labels.size()),
        n_features_(schema.size()),
        k_candidates_(params.resolve_features_per_split(schema.size())) {
    int max_levels = 0;
    for (const auto& f : schema_.features()) max_levels = std::max(max_levels, f.level_count());
    cnt_.resize(static_cast<std::size_t>(max_levels));
    pos_.resize(static_cast<std::size_t>(max_levels));
    sorted_.reserve(n_rows_);
    feature_pool_.resize(n_features_);
  }

  Tree build(std::uint64_t tree_seed) {
    Rng rng(tree_seed);
    samples_.resize(n_rows_);
    if (params_.bootstrap) {
      for (std::size_t i = 0; i < n_rows_; ++i) {
        samples_[i] = static_cast<std::int32_t>(rng.below(n_rows_));
      }
    } else {
      std::iota(samples_.begin(), samples_.end(), 0);
    }

    std::int64_t c0 = 0, c1 = 0;
    for (std::int32_t s : samples_) labels_[static_cast<std::size_t>(s)] ? ++c1 : ++c0;

    Tree tree;
    tree.nodes.reserve(64);
    tree.nodes.emplace_back();
    struct Work {
      std::int32_t lo, hi;
      std::int64_t c0, c1;
      std::int32_t node;
    };
    std::vector<Work> stack;
    stack.push_back({0, static_cast<std::int32_t>(n_rows_), c0, c1, 0});

    while (!stack.empty()) {
      Work w = stack.back();
      stack.pop_back();
      const std::int64_t m = w.hi - w.lo;

      BestSplit best;
      if (w.c0 > 0 && w.c1 > 0 && m >= 2 * params_.min_samples_leaf) {
        find_best_split(w.lo, w.hi, w.c0, w.c1, rng, best);
      }

      TreeNode& node = tree.nodes[static_cast<std::size_t>(w.node)];
      if (!best.found) {
        node.feature = -1;
        node.count0 = w.c0;
        node.count1 = w.c1;
        continue;
      }

      const std::int32_t* mid_ptr = partition_samples(w.lo, w.hi, best);
      const auto mid = static_cast<std::int32_t>(mid_ptr - samples_.data());

      node.feature = best.feature;
      if (best.categorical) {
        node.left_levels = std::move(best.left_levels);
      } else {
        node.threshold = best.threshold;
      }
      const auto left_idx = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      tree.nodes[static_cast<std::size_t>(w.node)].left = left_idx;
      tree.nodes[static_cast<std::size_t>(w.node)].right = left_idx + 1;

      // Right first so the left child is processed next (preorder layout).
      stack.push_back({mid, w.hi, w.c0 - best.c0_left, w.c1 - best.c1_left, left_idx + 1});
      stack.push_back({w.lo, mid, best.c0_left, best.c1_left, left_idx});
    }
    return tree;
  }

 private:
  void find_best_split(std::int32_t lo, std::int32_t hi, std::int64_t c0, std::int64_t c1, Rng& rng,
                       BestSplit& best) {
    const std::int64_t m = hi - lo;
    const std::int64_t parent_sq = c0 * c0 + c1 * c1;

    std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
    rng.partial_shuffle(feature_pool_, static_cast<std::size_t>(k_candidates_));
    std::sort(feature_pool_.begin(), feature_pool_.begin() + k_candidates_);

    for (int ci = 0; ci < k_candidates_; ++ci) {
      const int f = feature_pool_[static_cast<std::size_t>(ci)];
      if (schema_.at(static_cast<std::size_t>(f)).kind == FeatureKind::kContinuous) {
        eval_continuous(f, lo, hi, c0, c1, parent_sq, m, best);
      } else {
        eval_categorical(f, lo, hi, c0, c1, parent_sq, m, best);
      }
    }
  }

  void eval_continuous(int f, std::int32_t lo, std::int32_t hi, std::int64_t c0, std::int64_t c1,
                       std::int64_t parent_sq, std::int64_t m, BestSplit& best) {
    sorted_.clear();
    for (std::int32_t i = lo; i < hi; ++i) {
      const auto r = static_cast<std::size_t>(samples_[static_cast<std::size_t>(i)]);
      sorted_.push_back({values_[r * n_features_ + static_cast<std::size_t>(f)], labels_[r]});
    }
    std::sort(sorted_.begin(), sorted_.end(), [](const ValueLabel& a, const ValueLabel& b) { return a.v < b.v; });

    const std::int64_t min_leaf = params_.min_samples_leaf;
    std::int64_t c0l = 0, c1l = 0;
    for (std::int64_t i = 0; i + 1 < m; ++i) {
      sorted_[static_cast<std::size_t>(i)].y ? ++c1l : ++c0l;
      const std::int64_t nl = i + 1;
      const std::int64_t nr = m - nl;
      if (nr < min_leaf) break;
      if (nl < min_leaf) continue;
      if (sorted_[static_cast<std::size_t>(i)].v == sorted_[static_cast<std::size_t>(i + 1)].v) continue;
      ChildScore s{c0l * c0l + c1l * c1l,
                   (c0 - c0l) * (c0 - c0l) + (c1 - c1l) * (c1 - c1l), nl, nr};
      if (!positive_gain(s, parent_sq, m)) continue;
      if (best.found && !score_better(s, best.score)) continue;
      best.found = true;
      best.feature = f;
      best.categorical = false;
      // std::midpoint never reaches the upper value, so the <= test is exact.
      best.threshold = std::midpoint(sorted_[static_cast<std::size_t>(i)].v,
                                     sorted_[static_cast<std::size_t>(i + 1)].v);
      best.left_levels.clear();
      best.score = s;
      best.c0_left = c0l;
      best.c1_left = c1l;
    }
  }

  void eval_categorical(int f, std::int32_t lo, std::int32_t hi, std::int64_t c0, std::int64_t c1,
                        std::int64_t parent_sq, std::int64_t m, BestSplit& best) {
    const int levels = schema_.at(static_cast<std::size_t>(f)).level_count();
    std::fill(cnt_.begin(), cnt_.begin() + levels, 0);
    std::fill(pos_.begin(), pos_.begin() + levels, 0);
    for (std::int32_t i = lo; i < hi; ++i) {
      const auto r = static_cast<std::size_t>(samples_[static_cast<std::size_t>(i)]);
      const auto v = static_cast<std::size_t>(values_[r * n_features_ + static_cast<std::size_t>(f)]);
      ++cnt_[v];
      pos_[v] += labels_[r];
    }

    level_order_.clear();
    for (int v = 0; v < levels; ++v) {
      if (cnt_[static_cast<std::size_t>(v)] > 0) level_order_.push_back(static_cast<std::uint16_t>(v));
    }
    if (level_order_.size() < 2) return;
    // Ascending class-1 proportion; exact rational compare, level id breaks ties.
    std::sort(level_order_.begin(), level_order_.end(), [&](std::uint16_t x, std::uint16_t y) {
      const std::int64_t lhs = pos_[x] * cnt_[y];
      const std::int64_t rhs = pos_[y] * cnt_[x];
      if (lhs != rhs) return lhs < rhs;
      return x < y;
    });

    const std::int64_t min_leaf = params_.min_samples_leaf;
    std::int64_t c0l = 0, c1l = 0, nl = 0;
    for (std::size_t j = 0; j + 1 < level_order_.size(); ++j) {
      const std::uint16_t v = level_order_[j];
      nl += cnt_[v];
      c1l += pos_[v];
      c0l += cnt_[v] - pos_[v];
      const std::int64_t nr = m - nl;
      if (nr < min_leaf) break;
      if (nl < min_leaf) continue;
      ChildScore s{c0l * c0l + c1l * c1l,
                   (c0 - c0l) * (c0 - c0l) + (c1 - c1l) * (c1 - c1l), nl, nr};
      if (!positive_gain(s, parent_sq, m)) continue;
      if (best.found && !score_better(s, best.score)) continue;
      best.found = true;
      best.feature = f;
      best.categorical = true;
      best.left_levels.assign(level_order_.begin(), level_order_.begin() + static_cast<std::ptrdiff_t>(j + 1));
      std::sort(best.left_levels.begin(), best.left_levels.end());
      best.score = s;
      best.c0_left = c0l;
      best.c1_left = c1l;
    }
  }

  const std::int32_t* partition_samples(std::int32_t lo, std::int32_t hi, const BestSplit& best) {
    const auto f = static_cast<std::size_t>(best.feature);
    auto begin = samples_.begin() + lo;
    auto end = samples_.begin() + hi;
    if (best.categorical) {
      const auto& lv = best.left_levels;
      return &*std::partition(begin, end, [&](std::int32_t s) {
        return std::binary_search(lv.begin(), lv.end(),
                                  static_cast<std::uint16_t>(values_[static_cast<std::size_t>(s) * n_features_ + f]));
      });
    }
    const double t = best.threshold;
    return &*std::partition(begin, end, [&](std::int32_t s) {
      return values_[static_cast<std::size_t>(s) * n_features_ + f] <= t;
    });
  }

  const FeatureSchema& schema_;
  const std::vector<double>& values_;
  std::span<const std::uint8_t> labels_;
  const ForestParams& params_;
  const std::size_t n_rows_;
  const std::size_t n_features_;
  const int k_candidates_;

  std::vector<std::int32_t> samples_;
  std::vector<ValueLabel> sorted_;
  std::vector<std::int64_t> cnt_, pos_;
  std::vector<std::uint16_t> level_order_;
  std::vector<int> feature_pool_;
};

}  // namespace forest_detail

class ForestModel {
 public:
  ForestModel(FeatureSchema schema, ForestParams params, std::vector<Tree> trees)
      : schema_(std::move(schema)), params_(params), trees_(std::move(trees)) {
    if (trees_.size() != static_cast<std::size_t>(params_.n_trees)) {
      throw std::invalid_argument("tree count does not match params.n_trees");
    }
  }

  const FeatureSchema& schema() const { return schema_; }
  const ForestParams& params() const { return params_; }
  const std::vector<Tree>& trees() const { return trees_; }

  /// Fraction of trees voting class 1; resolution is 1 / n_trees.
  double predict_proba(std::span<const double> row) const {
    if (row.size() != schema_.size()) throw std::invalid_argument("predict: row does not match schema");
    int votes = 0;
    for (const Tree& t : trees_) votes += t.vote(row, schema_);
    return static_cast<double>(votes) / static_cast<double>(trees_.size());
  }

  /// 1 iff predict_proba >= 0.5.
  int predict(std::span<const double> row) const { return predict_proba(row) >= 0.5 ? 1 : 0; }

  void save(const std::filesystem::path& path) const;
  static ForestModel load(const std::filesystem::path& path);

 private:
  FeatureSchema schema_;
  ForestParams params_;
  std::vector<Tree> trees_;
};

/// Core fit over a row-major value matrix whose row position is its identity.
inline ForestModel fit(const FeatureSchema& schema, const std::vector<double>& values,
                       std::span<const std::uint8_t> labels, const ForestParams& params,
                       int n_workers = 1) {
  params.validate();
  if (schema.empty()) throw std::invalid_argument("fit: schema has no features");
  if (labels.size() < 2) throw std::invalid_argument("fit: need at least 2 rows");
  if (values.size() != labels.size() * schema.size()) {
    throw std::invalid_argument("fit: value matrix does not match rows x features");
  }
  for (std::uint8_t y : labels) {
    if (y > 1) throw std::invalid_argument("fit: labels must be 0 or 1");
  }

  std::vector<Tree> trees(static_cast<std::size_t>(params.n_trees));
  parallel_for(trees.size(), n_workers, [&](std::size_t t) {
    forest_detail::TreeBuilder builder(schema, values, labels, params);
    trees[t] = builder.build(derive_seed(params.seed, seed_domain::kForestTree, t));
  });
  return ForestModel(schema, params, std::move(trees));
}

/// Table-level fit: rows are identified by their table row id. The view is
/// canonically sorted by row id before any sampling, so shuffling the
/// presentation order of (row_ids, labels) cannot change the model.
inline ForestModel fit(const TransactionTable& table, std::span<const int> row_ids,
                       std::span<const std::uint8_t> labels, const ForestParams& params,
                       int n_workers = 1) {
  if (row_ids.size() != labels.size()) throw std::invalid_argument("fit: row/label length mismatch");
  std::vector<std::size_t> order(row_ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return row_ids[a] < row_ids[b]; });

  const std::size_t n_features = table.n_features();
  std::vector<double> values(order.size() * n_features);
  std::vector<std::uint8_t> view_labels(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int r = row_ids[order[i]];
    if (r < 0 || static_cast<std::size_t>(r) >= table.n_rows()) {
      throw std::invalid_argument("fit: row id out of range");
    }
    auto row = table.row(static_cast<std::size_t>(r));
    std::copy(row.begin(), row.end(), values.begin() + static_cast<std::ptrdiff_t>(i * n_features));
    view_labels[i] = labels[order[i]];
  }
  return fit(table.schema(), values, view_labels, params, n_workers);
}

// --- serialization -----------------------------------------------------------

inline void ForestModel::save(const std::filesystem::path& path) const {
  std::string out = "dayshift_forest 1\n";
  out += "features " + std::to_string(schema_.size()) + "\n";
  for (const auto& f : schema_.features()) {
    out += f.name;
    out += ' ';
    out += feature_kind_name(f.kind);
    out += ' ';
    out += std::to_string(f.cardinality);
    out += '\n';
  }
  out += "params " + std::to_string(params_.n_trees) + ' ' + std::to_string(params_.n_features_per_split) +
         ' ' + std::to_string(params_.min_samples_leaf) + ' ' + std::to_string(params_.seed) + ' ' +
         (params_.bootstrap ? "1" : "0") + '\n';
  out += "trees " + std::to_string(trees_.size()) + '\n';
  for (const Tree& tree : trees_) {
    out += "tree " + std::to_string(tree.nodes.size()) + '\n';
    for (const TreeNode& n : tree.nodes) {
      if (n.is_leaf()) {
        out += "l " + std::to_string(n.count0) + ' ' + std::to_string(n.count1) + '\n';
      } else if (n.left_levels.empty()) {
        out += "s " + std::to_string(n.feature) + ' ' + format_double(n.threshold) + ' ' +
               std::to_string(n.left) + ' ' + std::to_string(n.right) + '\n';
      } else {
        out += "k " + std::to_string(n.feature) + ' ' + std::to_string(n.left_levels.size());
        for (std::uint16_t v : n.left_levels) out += ' ' + std::to_string(v);
        out += ' ' + std::to_string(n.left) + ' ' + std::to_string(n.right) + '\n';
      }
    }
  }
  write_text_file(path, out);
}

inline ForestModel ForestModel::load(const std::filesystem::path& path) {
  auto lines = split_lines(read_text_file(path));
  std::size_t at = 0;
  auto next_line = [&]() -> const std::string& {
    if (at >= lines.size()) throw DataError(path.string() + ": truncated forest file");
    return lines[at++];
  };
  auto tokens_of = [](const std::string& line) {
    std::vector<std::string> toks;
    for (auto& t : split(line, ' ')) {
      if (!t.empty()) toks.push_back(std::move(t));
    }
    return toks;
  };

  if (next_line() != "dayshift_forest 1") throw DataError(path.string() + ": unknown forest format");

  auto feat_hdr = tokens_of(next_line());
  if (feat_hdr.size() != 2 || feat_hdr[0] != "features") throw DataError(path.string() + ": bad features header");
  const auto n_features = static_cast<std::size_t>(parse_int(feat_hdr[1], "feature count"));
  std::vector<FeatureSpec> specs;
  for (std::size_t i = 0; i < n_features; ++i) {
    auto toks = tokens_of(next_line());
    if (toks.size() != 3) throw DataError(path.string() + ": bad feature line");
    specs.push_back({toks[0], parse_feature_kind(toks[1]), static_cast<int>(parse_int(toks[2], "cardinality"))});
  }

  auto ptoks = tokens_of(next_line());
  if (ptoks.size() != 6 || ptoks[0] != "params") throw DataError(path.string() + ": bad params line");
  ForestParams params;
  params.n_trees = static_cast<int>(parse_int(ptoks[1], "n_trees"));
  params.n_features_per_split = static_cast<int>(parse_int(ptoks[2], "n_features_per_split"));
  params.min_samples_leaf = static_cast<int>(parse_int(ptoks[3], "min_samples_leaf"));
  params.seed = static_cast<std::uint64_t>(parse_int(ptoks[4], "seed"));
  params.bootstrap = parse_int(ptoks[5], "bootstrap") != 0;

  auto ttoks = tokens_of(next_line());
  if (ttoks.size() != 2 || ttoks[0] != "trees") throw DataError(path.string() + ": bad trees header");
  const auto n_trees = static_cast<std::size_t>(parse_int(ttoks[1], "tree count"));

  std::vector<Tree> trees;
  trees.reserve(n_trees);
  for (std::size_t t = 0; t < n_trees; ++t) {
    auto hdr = tokens_of(next_line());
    if (hdr.size() != 2 || hdr[0] != "tree") throw DataError(path.string() + ": bad tree header");
    const auto n_nodes = static_cast<std::size_t>(parse_int(hdr[1], "node count"));
    Tree tree;
    tree.nodes.reserve(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
      auto toks = tokens_of(next_line());
      TreeNode node;
      if (toks.empty()) throw DataError(path.string() + ": empty node line");
      if (toks[0] == "l" && toks.size() == 3) {
        node.count0 = parse_int(toks[1], "count0");
        node.count1 = parse_int(toks[2], "count1");
      } else if (toks[0] == "s" && toks.size() == 5) {
        node.feature = static_cast<std::int32_t>(parse_int(toks[1], "feature"));
        node.threshold = parse_double(toks[2], "threshold");
        node.left = static_cast<std::int32_t>(parse_int(toks[3], "left"));
        node.right = static_cast<std::int32_t>(parse_int(toks[4], "right"));
      } else if (toks[0] == "k" && toks.size() >= 4) {
        node.feature = static_cast<std::int32_t>(parse_int(toks[1], "feature"));
        const auto n_levels = static_cast<std::size_t>(parse_int(toks[2], "level count"));
        if (toks.size() != 5 + n_levels) throw DataError(path.string() + ": bad categorical node line");
        for (std::size_t v = 0; v < n_levels; ++v) {
          node.left_levels.push_back(static_cast<std::uint16_t>(parse_int(toks[3 + v], "level")));
        }
        node.left = static_cast<std::int32_t>(parse_int(toks[3 + n_levels], "left"));
        node.right = static_cast<std::int32_t>(parse_int(toks[4 + n_levels], "right"));
      } else {
        throw DataError(path.string() + ": bad node line '" + lines[at - 1] + "'");
      }
      tree.nodes.push_back(std::move(node));
    }
    trees.push_back(std::move(tree));
  }
  return ForestModel(FeatureSchema(std::move(specs)), params, std::move(trees));
}

}  // namespace dayshift
