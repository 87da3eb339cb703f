#pragma once

// Confusion-matrix and ranking metrics: MCC, ROC-AUC, PR-AUC.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "dayshift/errors.hpp"

namespace dayshift {

struct ConfusionMatrix {
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::int64_t total() const { return tp + fp + fn + tn; }
};

inline ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size()) throw std::invalid_argument("confusion: length mismatch");
  if (predictions.empty()) throw std::invalid_argument("confusion: empty input");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (labels[i] == 1) {
      predictions[i] == 1 ? ++cm.tp : ++cm.fn;
    } else {
      predictions[i] == 1 ? ++cm.fp : ++cm.tn;
    }
  }
  return cm;
}

/// Matthews correlation coefficient in [-1, 1]. Returns 0 when any marginal
/// (predicted or actual class count) is zero.
inline double mcc(const ConfusionMatrix& cm) {
  if (cm.total() <= 0) throw std::invalid_argument("mcc: empty confusion matrix");
  const double f1 = static_cast<double>(cm.tp + cm.fp);
  const double f2 = static_cast<double>(cm.tp + cm.fn);
  const double f3 = static_cast<double>(cm.tn + cm.fp);
  const double f4 = static_cast<double>(cm.tn + cm.fn);
  if (f1 == 0.0 || f2 == 0.0 || f3 == 0.0 || f4 == 0.0) return 0.0;
  const double num =
      static_cast<double>(cm.tp) * static_cast<double>(cm.tn) - static_cast<double>(cm.fp) * static_cast<double>(cm.fn);
  return num / (std::sqrt(f1) * std::sqrt(f2) * std::sqrt(f3) * std::sqrt(f4));
}

struct ScoredLabels {
  std::vector<double> scores;
  std::vector<int> labels;  // 0/1

  ScoredLabels(std::vector<double> s, std::vector<int> l) : scores(std::move(s)), labels(std::move(l)) {
    if (scores.size() != labels.size()) throw std::invalid_argument("scores/labels length mismatch");
    for (double v : scores) {
      if (!std::isfinite(v)) throw std::invalid_argument("scores must be finite");
    }
    for (int l01 : labels) {
      if (l01 != 0 && l01 != 1) throw std::invalid_argument("labels must be 0 or 1");
    }
  }

  std::size_t positives() const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  }
};

/// Probability that a random positive outranks a random negative, ties counted
/// half (rank / Mann-Whitney form). Requires both classes present.
inline double roc_auc(const ScoredLabels& data) {
  const std::size_t n = data.scores.size();
  const std::size_t n_pos = data.positives();
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw InfeasibleError("roc_auc undefined: input has a single class");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return data.scores[a] < data.scores[b]; });

  // Average ranks over tied blocks, then the rank-sum statistic.
  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && data.scores[order[j]] == data.scores[order[i]]) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));  // 1-based
    for (std::size_t k = i; k < j; ++k) {
      if (data.labels[order[k]] == 1) pos_rank_sum += avg_rank;
    }
    i = j;
  }
  const double np = static_cast<double>(n_pos);
  return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

/// Average precision: mean over positives of precision at that positive's
/// rank. Ties are broken by stable input order after the descending sort.
inline double pr_auc(const ScoredLabels& data) {
  const std::size_t n = data.scores.size();
  const std::size_t n_pos = data.positives();
  if (n_pos == 0) throw InfeasibleError("pr_auc undefined: no positive labels");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return data.scores[a] > data.scores[b]; });

  double sum = 0.0;
  std::size_t seen_pos = 0;
  for (std::size_t rank = 1; rank <= n; ++rank) {
    if (data.labels[order[rank - 1]] == 1) {
      ++seen_pos;
      sum += static_cast<double>(seen_pos) / static_cast<double>(rank);
    }
  }
  return sum / static_cast<double>(n_pos);
}

}  // namespace dayshift
