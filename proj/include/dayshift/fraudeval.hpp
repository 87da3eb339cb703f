#pragma once

// Sliding-window fraud-detection experiment: 7 train days, a 7-day gap
// (modeling delayed investigator ground truth), 7 test days. Each fold trains
// one classifier with the day-cluster feature injected and one without, on
// identical fold seeds, and reports PR-AUC / ROC-AUC for both arms.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dayshift/clustering.hpp"
#include "dayshift/errors.hpp"
#include "dayshift/forest.hpp"
#include "dayshift/metrics.hpp"
#include "dayshift/rng.hpp"
#include "dayshift/table.hpp"
#include "dayshift/util.hpp"

namespace dayshift {

inline constexpr int kWindowDays = 7;
inline constexpr const char* kShiftFeatureName = "day_cluster";

struct FoldSpec {
  int train_begin = 0;  // train [train_begin, +7), gap [+7, +14), test [+14, +21)
  int gap_begin() const { return train_begin + kWindowDays; }
  int test_begin() const { return train_begin + 2 * kWindowDays; }
  int end() const { return train_begin + 3 * kWindowDays; }
};

/// Fold f's test window starts at first_test_start + 7f; windows must fit in
/// [0, n_days). The default first_test_start of 15 puts fold 0's test window
/// at 16/03-22/03 on a calendar anchored at 01/03.
inline std::vector<FoldSpec> make_folds(int n_days, int n_folds, int first_test_start = 15) {
  if (n_folds < 1) throw InfeasibleError("make_folds: need at least one fold");
  std::vector<FoldSpec> folds;
  folds.reserve(static_cast<std::size_t>(n_folds));
  for (int f = 0; f < n_folds; ++f) {
    const int test_start = first_test_start + kWindowDays * f;
    FoldSpec spec{test_start - 2 * kWindowDays};
    if (spec.train_begin < 0 || spec.end() > n_days) {
      throw InfeasibleError("make_folds: fold " + std::to_string(f) + " needs days [" +
                            std::to_string(spec.train_begin) + ", " + std::to_string(spec.end()) +
                            ") outside [0, " + std::to_string(n_days) + ")");
    }
    folds.push_back(spec);
  }
  return folds;
}

struct FoldRows {
  std::vector<int> train_ids, test_ids;
};

inline FoldRows collect_fold_rows(const TransactionTable& table, const FoldSpec& fold) {
  FoldRows rows;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    const int day = table.day_of_row(r);
    if (day >= fold.train_begin && day < fold.gap_begin()) {
      rows.train_ids.push_back(static_cast<int>(r));
    } else if (day >= fold.test_begin() && day < fold.end()) {
      rows.test_ids.push_back(static_cast<int>(r));
    }
  }
  return rows;
}

/// Returns a copy of the table with one categorical feature `day_cluster`
/// appended, valued by each row's day cluster. The input table is unchanged.
inline TransactionTable inject_shift_feature(const TransactionTable& table,
                                             const ClusterAssignment& assignment) {
  if (assignment.labels.size() != static_cast<std::size_t>(table.n_days())) {
    throw DataError("cluster assignment covers " + std::to_string(assignment.labels.size()) +
                    " days but the table has " + std::to_string(table.n_days()));
  }
  if (table.schema().index_of(kShiftFeatureName) >= 0) {
    throw DataError(std::string("feature name collision: '") + kShiftFeatureName + "' already present");
  }

  std::vector<FeatureSpec> specs = table.schema().features();
  // k = 1 yields a degenerate constant feature; the schema still needs two levels.
  specs.push_back({kShiftFeatureName, FeatureKind::kCategorical, std::max(2, assignment.k)});
  FeatureSchema schema(std::move(specs));

  const std::size_t old_width = table.n_features();
  std::vector<double> values;
  values.reserve(table.n_rows() * (old_width + 1));
  std::vector<int> day_index(table.n_rows());
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    auto row = table.row(r);
    values.insert(values.end(), row.begin(), row.end());
    const int day = table.day_of_row(r);
    values.push_back(static_cast<double>(assignment.labels[static_cast<std::size_t>(day)]));
    day_index[r] = day;
  }
  return TransactionTable(std::move(schema), table.day_dates(), std::move(day_index), std::move(values),
                          table.labels());
}

struct FoldResult {
  Date test_start_date, test_end_date;
  double pr_auc_without = 0.0, pr_auc_with = 0.0;
  double roc_auc_without = 0.0, roc_auc_with = 0.0;
};

struct EvalReport {
  bool has_with = false;
  std::vector<FoldResult> folds;
  double avg_pr_without = 0.0, avg_pr_with = 0.0;
  double avg_roc_without = 0.0, avg_roc_with = 0.0;
  std::string assignment_mode;  // annotation only

  void compute_averages() {
    avg_pr_without = avg_pr_with = avg_roc_without = avg_roc_with = 0.0;
    for (const FoldResult& f : folds) {
      avg_pr_without += f.pr_auc_without;
      avg_pr_with += f.pr_auc_with;
      avg_roc_without += f.roc_auc_without;
      avg_roc_with += f.roc_auc_with;
    }
    const auto n = static_cast<double>(folds.size());
    avg_pr_without /= n;
    avg_pr_with /= n;
    avg_roc_without /= n;
    avg_roc_with /= n;
  }
};

namespace fraud_detail {

struct ArmScores {
  double pr = 0.0, roc = 0.0;
};

inline ArmScores run_arm(const TransactionTable& table, const FoldRows& rows, ForestParams params) {
  std::vector<std::uint8_t> train_labels(rows.train_ids.size());
  std::int64_t positives = 0;
  for (std::size_t i = 0; i < rows.train_ids.size(); ++i) {
    train_labels[i] = static_cast<std::uint8_t>(table.label(static_cast<std::size_t>(rows.train_ids[i])));
    positives += train_labels[i];
  }
  if (positives == 0 || positives == static_cast<std::int64_t>(train_labels.size())) {
    throw InfeasibleError("single-class train window: cannot fit a fraud classifier");
  }

  const ForestModel model = fit(table, rows.train_ids, train_labels, params);

  std::vector<double> scores(rows.test_ids.size());
  std::vector<int> labels(rows.test_ids.size());
  for (std::size_t i = 0; i < rows.test_ids.size(); ++i) {
    const auto r = static_cast<std::size_t>(rows.test_ids[i]);
    scores[i] = model.predict_proba(table.row(r));
    labels[i] = table.label(r);
  }
  const ScoredLabels scored(std::move(scores), std::move(labels));
  return {pr_auc(scored), roc_auc(scored)};
}

}  // namespace fraud_detail

/// Runs every fold in both arms. Fold f uses the sub-seed derived from
/// (params.seed, f) in both arms, so the arms differ only by the injected
/// feature; without an assignment only the "without" arm runs.
inline EvalReport run_protocol(const TransactionTable& table,
                               const std::optional<ClusterAssignment>& assignment,
                               const std::vector<FoldSpec>& folds, const ForestParams& params) {
  if (folds.empty()) throw InfeasibleError("run_protocol: no folds");
  params.validate();
  std::optional<TransactionTable> injected;
  if (assignment) injected.emplace(inject_shift_feature(table, *assignment));

  EvalReport report;
  report.has_with = assignment.has_value();
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const FoldSpec& fold = folds[f];
    if (fold.end() > table.n_days()) throw InfeasibleError("run_protocol: fold exceeds the table's day range");
    const FoldRows rows = collect_fold_rows(table, fold);
    if (rows.train_ids.empty() || rows.test_ids.empty()) {
      throw InfeasibleError("run_protocol: fold " + std::to_string(f) + " has an empty window");
    }

    ForestParams fold_params = params;
    fold_params.seed = derive_seed(params.seed, seed_domain::kFold, f);

    FoldResult result;
    result.test_start_date = table.date_of_day(fold.test_begin());
    result.test_end_date = table.date_of_day(fold.end() - 1);

    const auto without = fraud_detail::run_arm(table, rows, fold_params);
    result.pr_auc_without = without.pr;
    result.roc_auc_without = without.roc;
    if (injected) {
      const auto with = fraud_detail::run_arm(*injected, rows, fold_params);
      result.pr_auc_with = with.pr;
      result.roc_auc_with = with.roc;
    }
    report.folds.push_back(result);
  }
  report.compute_averages();
  return report;
}

// --- report output ---------------------------------------------------------

inline std::string report_csv(const EvalReport& report) {
  std::string out = "test_start,test_end,pr_auc_without,pr_auc_with,roc_auc_without,roc_auc_with\n";
  auto cell = [&](double v) { return report.has_with ? format_double(v) : std::string(); };
  for (const FoldResult& f : report.folds) {
    out += f.test_start_date.iso() + ',' + f.test_end_date.iso() + ',' + format_double(f.pr_auc_without) +
           ',' + cell(f.pr_auc_with) + ',' + format_double(f.roc_auc_without) + ',' + cell(f.roc_auc_with) +
           '\n';
  }
  out += "average,," + format_double(report.avg_pr_without) + ',' + cell(report.avg_pr_with) + ',' +
         format_double(report.avg_roc_without) + ',' + cell(report.avg_roc_with) + '\n';
  return out;
}

/// Aligned text table: one row per fold labeled by its test window, plus an
/// average row, with PR-AUC and ROC-AUC columns for both arms.
inline std::string report_text(const EvalReport& report) {
  auto window = [](const FoldResult& f) {
    auto dm = [](const Date& d) { return d.iso().substr(8, 2) + "/" + d.iso().substr(5, 2); };
    return dm(f.test_start_date) + "-" + dm(f.test_end_date);
  };
  auto num = [&](double v, bool with_col) {
    if (with_col && !report.has_with) return std::string("     -");
    char buf[16];
    std::snprintf(buf, sizeof buf, "%6.3f", v);
    return std::string(buf);
  };
  std::string out;
  out += "                 PR AUC          ROC AUC\n";
  out += " test set      without   with  without   with\n";
  for (const FoldResult& f : report.folds) {
    out += " " + window(f) + "  " + num(f.pr_auc_without, false) + " " + num(f.pr_auc_with, true) + "  " +
           num(f.roc_auc_without, false) + " " + num(f.roc_auc_with, true) + "\n";
  }
  out += " average      " + num(report.avg_pr_without, false) + " " + num(report.avg_pr_with, true) + "  " +
         num(report.avg_roc_without, false) + " " + num(report.avg_roc_with, true) + "\n";
  if (!report.assignment_mode.empty()) {
    out += " (day clusters: " + report.assignment_mode + ")\n";
  }
  return out;
}

}  // namespace dayshift
