#pragma once

// Day-by-day covariate-shift distance matrix. For each pair of days a forest
// is trained to classify which day a transaction came from; held-out MCC is
// the raw dissimilarity and distance is MCC clamped at zero. Fraud labels are
// never used here: the pair classifier sees only the feature columns.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dayshift/errors.hpp"
#include "dayshift/forest.hpp"
#include "dayshift/metrics.hpp"
#include "dayshift/parallel.hpp"
#include "dayshift/rng.hpp"
#include "dayshift/table.hpp"
#include "dayshift/util.hpp"
#include "dayshift/version.hpp"

namespace dayshift {

struct PairProtocol {
  int n_train_per_day = 20000;
  int n_test_per_day = 5000;
  ForestParams forest;       // forest.seed is ignored; pair seeds derive from `seed`
  std::uint64_t seed = 0;
  int n_repeats = 1;         // MCC averaged over this many independent repetitions

  void validate() const {
    if (n_train_per_day < 1 || n_test_per_day < 1) {
      throw std::invalid_argument("pair protocol needs positive per-day sample sizes");
    }
    if (n_repeats < 1) throw std::invalid_argument("n_repeats must be positive");
    forest.validate();
  }
};

struct ShiftMatrix {
  int n_days = 0;
  std::vector<double> dist;  // row-major, max(0, raw)
  std::vector<double> raw;   // unclamped MCC
  std::vector<Date> day_dates;

  double at(int i, int j) const { return dist[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_days) + static_cast<std::size_t>(j)]; }
  double raw_at(int i, int j) const { return raw[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_days) + static_cast<std::size_t>(j)]; }

  void validate() const {
    const auto n = static_cast<std::size_t>(n_days);
    if (dist.size() != n * n || raw.size() != n * n) throw DataError("shift matrix has wrong shape");
    if (!day_dates.empty() && day_dates.size() != n) throw DataError("shift matrix date labels have wrong length");
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i * n + i] != 0.0 || raw[i * n + i] != 0.0) throw DataError("shift matrix diagonal must be zero");
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[i * n + j] != dist[j * n + i] || raw[i * n + j] != raw[j * n + i]) {
          throw DataError("shift matrix must be exactly symmetric");
        }
        if (dist[i * n + j] != std::max(0.0, raw[i * n + j]) || dist[i * n + j] > 1.0) {
          throw DataError("shift matrix distances must equal max(0, mcc)");
        }
      }
    }
  }
};

namespace shift_detail {

struct PairBudget {
  int train_per_day = 0;
  int test_per_day = 0;
};

// Days smaller than the protocol shrink both days to the smaller day's row
// count, preserving the train:test ratio; per-day counts stay equal so the
// pair classes stay balanced.
inline PairBudget pair_budget(std::size_t rows_i, std::size_t rows_j, const PairProtocol& proto) {
  const std::int64_t want = static_cast<std::int64_t>(proto.n_train_per_day) + proto.n_test_per_day;
  const std::int64_t have = std::min<std::int64_t>({want, static_cast<std::int64_t>(rows_i),
                                                    static_cast<std::int64_t>(rows_j)});
  std::int64_t train = have * proto.n_train_per_day / want;
  train = std::clamp<std::int64_t>(train, 1, have - 1);
  return {static_cast<int>(train), static_cast<int>(have - train)};
}

inline constexpr std::size_t kMinRowsPerDay = 20;

inline double pair_shift_sliced(const TransactionTable& table, const DaySlice& slice_a,
                                const DaySlice& slice_b, const PairProtocol& proto) {
  // Canonical orientation: the lower day index is class 0. This plus the
  // symmetric seed derivation makes pair_shift(i, j) == pair_shift(j, i).
  const DaySlice& lo = slice_a.day_index < slice_b.day_index ? slice_a : slice_b;
  const DaySlice& hi = slice_a.day_index < slice_b.day_index ? slice_b : slice_a;
  for (const DaySlice* s : {&lo, &hi}) {
    if (s->row_ids.size() < kMinRowsPerDay) {
      throw InfeasibleError("day " + table.date_of_day(s->day_index).iso() + " has only " +
                            std::to_string(s->row_ids.size()) + " rows (need at least " +
                            std::to_string(kMinRowsPerDay) + ")");
    }
  }

  const PairBudget budget = pair_budget(lo.row_ids.size(), hi.row_ids.size(), proto);
  const std::size_t per_day = static_cast<std::size_t>(budget.train_per_day) + static_cast<std::size_t>(budget.test_per_day);
  const std::uint64_t pair_seed = derive_seed(proto.seed, static_cast<std::uint64_t>(lo.day_index),
                                              static_cast<std::uint64_t>(hi.day_index));

  double mcc_sum = 0.0;
  for (int rep = 0; rep < proto.n_repeats; ++rep) {
    const std::uint64_t rep_seed = proto.n_repeats == 1 ? pair_seed : derive_seed(pair_seed, static_cast<std::uint64_t>(rep));
    Rng sample_rng(derive_seed(rep_seed, seed_domain::kPairSample));

    std::vector<int> rows_lo = lo.row_ids;
    std::vector<int> rows_hi = hi.row_ids;
    sample_rng.partial_shuffle(rows_lo, per_day);
    sample_rng.partial_shuffle(rows_hi, per_day);

    std::vector<int> train_rows, test_rows;
    std::vector<std::uint8_t> train_labels, test_labels;
    train_rows.reserve(2 * static_cast<std::size_t>(budget.train_per_day));
    test_rows.reserve(2 * static_cast<std::size_t>(budget.test_per_day));
    for (int cls = 0; cls < 2; ++cls) {
      const std::vector<int>& rows = cls == 0 ? rows_lo : rows_hi;
      for (int i = 0; i < budget.train_per_day; ++i) {
        train_rows.push_back(rows[static_cast<std::size_t>(i)]);
        train_labels.push_back(static_cast<std::uint8_t>(cls));
      }
      for (int i = 0; i < budget.test_per_day; ++i) {
        test_rows.push_back(rows[static_cast<std::size_t>(budget.train_per_day + i)]);
        test_labels.push_back(static_cast<std::uint8_t>(cls));
      }
    }

    ForestParams forest_params = proto.forest;
    forest_params.seed = derive_seed(rep_seed, seed_domain::kPairForest);
    const ForestModel model = fit(table, train_rows, train_labels, forest_params);

    std::vector<int> predictions(test_rows.size());
    std::vector<int> truth(test_rows.size());
    for (std::size_t i = 0; i < test_rows.size(); ++i) {
      predictions[i] = model.predict(table.row(static_cast<std::size_t>(test_rows[i])));
      truth[i] = test_labels[i];
    }
    mcc_sum += mcc(confusion(predictions, truth));
  }
  return mcc_sum / proto.n_repeats;
}

}  // namespace shift_detail

/// Raw MCC of the day_i-vs-day_j pair classifier; symmetric in (i, j).
inline double pair_shift(const TransactionTable& table, int day_i, int day_j, const PairProtocol& proto) {
  proto.validate();
  if (day_i == day_j) throw std::invalid_argument("pair_shift: needs two distinct days");
  if (day_i < 0 || day_j < 0 || day_i >= table.n_days() || day_j >= table.n_days()) {
    throw std::invalid_argument("pair_shift: day index out of range");
  }
  const auto slices = slice_by_day(table);
  return shift_detail::pair_shift_sliced(table, slices[static_cast<std::size_t>(day_i)],
                                         slices[static_cast<std::size_t>(day_j)], proto);
}

/// All n(n-1)/2 pairs; exactly symmetric with a zero diagonal. Pair jobs are
/// independent and deterministically seeded, so any worker count produces a
/// bit-identical matrix. `progress` (optional) receives the number of finished
/// pairs and must not touch the results.
inline ShiftMatrix build_matrix(const TransactionTable& table, const PairProtocol& proto,
                                int n_workers = 1,
                                const std::function<void(std::size_t, std::size_t)>& progress = {}) {
  proto.validate();
  const int n = table.n_days();
  if (n < 2) throw InfeasibleError("build_matrix: need at least 2 days");
  const auto slices = slice_by_day(table);

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  std::vector<double> results(pairs.size());
  std::atomic<std::size_t> done{0};
  parallel_for(pairs.size(), n_workers, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    try {
      results[p] = shift_detail::pair_shift_sliced(table, slices[static_cast<std::size_t>(i)],
                                                   slices[static_cast<std::size_t>(j)], proto);
    } catch (const std::exception& e) {
      throw InfeasibleError("pair (" + table.date_of_day(i).iso() + ", " + table.date_of_day(j).iso() +
                            "): " + e.what());
    }
    if (progress) progress(done.fetch_add(1) + 1, pairs.size());
  });

  ShiftMatrix m;
  m.n_days = n;
  m.day_dates = table.day_dates();
  m.raw.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  m.dist.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const double raw = results[p];
    const double dist = std::max(0.0, raw);
    const auto un = static_cast<std::size_t>(n);
    m.raw[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j)] = raw;
    m.raw[static_cast<std::size_t>(j) * un + static_cast<std::size_t>(i)] = raw;
    m.dist[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j)] = dist;
    m.dist[static_cast<std::size_t>(j) * un + static_cast<std::size_t>(i)] = dist;
  }
  m.validate();
  return m;
}

// --- persistence --------------------------------------------------------------
//
// `<stem>.csv` holds the clamped distances, `<stem>.raw.csv` the unclamped MCC
// values, both with ISO-date row/column headers and full round-trip precision.
// `<stem>.meta` records seed, protocol and dataset fingerprint for cache checks.

namespace shift_detail {

inline std::string matrix_csv(const std::vector<double>& cells, const std::vector<Date>& dates, int n) {
  std::string out = "date";
  for (int j = 0; j < n; ++j) {
    out += ',';
    out += dates[static_cast<std::size_t>(j)].iso();
  }
  out += '\n';
  for (int i = 0; i < n; ++i) {
    out += dates[static_cast<std::size_t>(i)].iso();
    for (int j = 0; j < n; ++j) {
      out += ',';
      out += format_double(cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]);
    }
    out += '\n';
  }
  return out;
}

inline std::pair<std::vector<double>, std::vector<Date>> parse_matrix_csv(const std::filesystem::path& path) {
  auto lines = split_lines(read_text_file(path));
  if (lines.empty()) throw DataError(path.string() + ": empty matrix file");
  auto header = split(lines[0], ',');
  if (header.size() < 2 || header[0] != "date") throw DataError(path.string() + ": bad matrix header");
  const std::size_t n = header.size() - 1;
  if (lines.size() != n + 1) throw DataError(path.string() + ": matrix row count does not match header");
  std::vector<Date> dates;
  dates.reserve(n);
  for (std::size_t j = 0; j < n; ++j) dates.push_back(Date::parse(header[j + 1]));
  std::vector<double> cells(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto fields = split(lines[i + 1], ',');
    if (fields.size() != n + 1) throw DataError(path.string() + ": bad matrix row " + std::to_string(i + 2));
    if (Date::parse(fields[0]) != dates[i]) throw DataError(path.string() + ": row labels disagree with header");
    for (std::size_t j = 0; j < n; ++j) cells[i * n + j] = parse_double(fields[j + 1], "matrix cell");
  }
  return {std::move(cells), std::move(dates)};
}

}  // namespace shift_detail

struct ShiftMatrixPaths {
  std::filesystem::path csv, raw_csv, meta;
  explicit ShiftMatrixPaths(const std::filesystem::path& stem)
      : csv(stem.string() + ".csv"), raw_csv(stem.string() + ".raw.csv"), meta(stem.string() + ".meta") {}
};

inline void save_shift_matrix(const ShiftMatrix& m, const std::filesystem::path& stem,
                              const PairProtocol& proto, std::uint64_t dataset_hash,
                              std::uint64_t config_hash = 0) {
  const ShiftMatrixPaths paths(stem);
  write_text_file(paths.csv, shift_detail::matrix_csv(m.dist, m.day_dates, m.n_days));
  write_text_file(paths.raw_csv, shift_detail::matrix_csv(m.raw, m.day_dates, m.n_days));
  KvPairs meta{
      {"tool_version", std::string(kToolName) + " " + kToolVersion},
      {"config_hash", to_hex(config_hash)},
      {"seed", std::to_string(proto.seed)},
      {"n_days", std::to_string(m.n_days)},
      {"n_train_per_day", std::to_string(proto.n_train_per_day)},
      {"n_test_per_day", std::to_string(proto.n_test_per_day)},
      {"n_repeats", std::to_string(proto.n_repeats)},
      {"forest_n_trees", std::to_string(proto.forest.n_trees)},
      {"forest_n_features_per_split", std::to_string(proto.forest.n_features_per_split)},
      {"forest_min_samples_leaf", std::to_string(proto.forest.min_samples_leaf)},
      {"forest_bootstrap", proto.forest.bootstrap ? "1" : "0"},
      {"dataset_hash", to_hex(dataset_hash)},
      {"hash." + paths.csv.filename().string(), to_hex(fnv1a_file(paths.csv))},
      {"hash." + paths.raw_csv.filename().string(), to_hex(fnv1a_file(paths.raw_csv))},
  };
  write_kv_file(paths.meta, meta);
}

inline ShiftMatrix load_shift_matrix(const std::filesystem::path& stem) {
  const ShiftMatrixPaths paths(stem);
  auto [dist, dates] = shift_detail::parse_matrix_csv(paths.csv);
  auto [raw, raw_dates] = shift_detail::parse_matrix_csv(paths.raw_csv);
  if (dates != raw_dates) throw DataError("matrix and raw matrix disagree on dates");
  ShiftMatrix m;
  m.n_days = static_cast<int>(dates.size());
  m.day_dates = std::move(dates);
  m.dist = std::move(dist);
  m.raw = std::move(raw);
  m.validate();
  return m;
}

}  // namespace dayshift
