#pragma once

// Day-indexed labeled transaction data. A TransactionTable is immutable after
// construction and safe to read from concurrent workers.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dayshift/dates.hpp"
#include "dayshift/errors.hpp"
#include "dayshift/schema.hpp"
#include "dayshift/util.hpp"

namespace dayshift {

class TransactionTable {
 public:
  // Validates the full data model: value vectors match the schema, categorical
  // values are below their cardinality, day indices cover a contiguous range of
  // consecutive calendar dates, and no day is empty.
  TransactionTable(FeatureSchema schema, std::vector<Date> day_dates, std::vector<int> day_index,
                   std::vector<double> values, std::vector<std::uint8_t> labels)
      : schema_(std::move(schema)),
        day_dates_(std::move(day_dates)),
        day_index_(std::move(day_index)),
        values_(std::move(values)),
        labels_(std::move(labels)) {
    const std::size_t n = day_index_.size();
    if (labels_.size() != n) throw DataError("label count does not match row count");
    if (schema_.empty()) throw DataError("schema has no features");
    if (values_.size() != n * schema_.size()) throw DataError("value matrix does not match rows x features");
    if (day_dates_.empty()) throw DataError("table has no days");
    for (std::size_t d = 1; d < day_dates_.size(); ++d) {
      if (day_dates_[d] - day_dates_[d - 1] != 1) {
        throw DataError("non-consecutive dates: " + day_dates_[d - 1].iso() + " then " + day_dates_[d].iso());
      }
    }
    std::vector<std::size_t> per_day(day_dates_.size(), 0);
    for (std::size_t r = 0; r < n; ++r) {
      if (labels_[r] > 1) throw DataError("row " + std::to_string(r) + ": label must be 0 or 1");
      int d = day_index_[r];
      if (d < 0 || static_cast<std::size_t>(d) >= day_dates_.size()) {
        throw DataError("row " + std::to_string(r) + ": day index out of range");
      }
      ++per_day[static_cast<std::size_t>(d)];
      for (std::size_t f = 0; f < schema_.size(); ++f) {
        double v = values_[r * schema_.size() + f];
        if (!schema_.value_in_domain(f, v)) {
          throw DataError("row " + std::to_string(r) + ": value " + format_double(v) +
                          " out of domain for feature '" + schema_.at(f).name + "'");
        }
      }
    }
    for (std::size_t d = 0; d < per_day.size(); ++d) {
      if (per_day[d] == 0) throw DataError("day " + day_dates_[d].iso() + " has no rows");
    }
  }

  std::size_t n_rows() const { return day_index_.size(); }
  std::size_t n_features() const { return schema_.size(); }
  int n_days() const { return static_cast<int>(day_dates_.size()); }

  const FeatureSchema& schema() const { return schema_; }

  double value(std::size_t row, std::size_t feature) const { return values_[row * schema_.size() + feature]; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values_.data() + r * schema_.size(), schema_.size());
  }
  int label(std::size_t row) const { return labels_[row]; }
  int day_of_row(std::size_t row) const { return day_index_[row]; }
  Date date_of_day(int day) const { return day_dates_.at(static_cast<std::size_t>(day)); }
  const std::vector<Date>& day_dates() const { return day_dates_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }

  bool operator==(const TransactionTable&) const = default;

 private:
  FeatureSchema schema_;
  std::vector<Date> day_dates_;
  std::vector<int> day_index_;
  std::vector<double> values_;       // row-major, n_rows x n_features
  std::vector<std::uint8_t> labels_;  // 0 = genuine, 1 = fraud
};

struct DaySlice {
  int day_index = 0;
  std::vector<int> row_ids;
};

// One slice per day, ordered by day index; slices partition all rows.
inline std::vector<DaySlice> slice_by_day(const TransactionTable& table) {
  std::vector<DaySlice> slices(static_cast<std::size_t>(table.n_days()));
  for (int d = 0; d < table.n_days(); ++d) slices[static_cast<std::size_t>(d)].day_index = d;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    slices[static_cast<std::size_t>(table.day_of_row(r))].row_ids.push_back(static_cast<int>(r));
  }
  return slices;
}

// Dataset CSV: header `date,label,<feature names>`, ISO dates, label in {0,1}.
// Malformed rows are errors, never silently dropped. Days are numbered in
// ascending date order and dates must form a consecutive range.
inline TransactionTable load_csv(const std::filesystem::path& csv_path,
                                 const std::filesystem::path& schema_path) {
  FeatureSchema schema = FeatureSchema::load(schema_path);
  auto lines = split_lines(read_text_file(csv_path));
  if (lines.empty()) throw DataError(csv_path.string() + ": empty file");

  std::string expected_header = "date,label";
  for (const auto& f : schema.features()) {
    expected_header += ',';
    expected_header += f.name;
  }
  if (lines[0] != expected_header) {
    throw DataError(csv_path.string() + ": header does not match schema (expected '" + expected_header +
                    "', got '" + lines[0] + "')");
  }

  const std::size_t n_fields = 2 + schema.size();
  std::vector<Date> row_dates;
  std::vector<double> values;
  std::vector<std::uint8_t> labels;
  row_dates.reserve(lines.size());
  values.reserve((lines.size() - 1) * schema.size());

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string row_ref = csv_path.filename().string() + ":" + std::to_string(i + 1);
    auto fields = split(lines[i], ',');
    if (fields.size() != n_fields) {
      throw DataError(row_ref + ": expected " + std::to_string(n_fields) + " fields, got " +
                      std::to_string(fields.size()));
    }
    row_dates.push_back(Date::parse(fields[0]));
    long long label = parse_int(fields[1], row_ref + " label");
    if (label != 0 && label != 1) throw DataError(row_ref + ": label must be 0 or 1");
    labels.push_back(static_cast<std::uint8_t>(label));
    for (std::size_t f = 0; f < schema.size(); ++f) {
      const FeatureSpec& spec = schema.at(f);
      double v = parse_double(fields[2 + f], row_ref + " feature '" + spec.name + "'");
      if (!schema.value_in_domain(f, v)) {
        if (spec.kind == FeatureKind::kContinuous) {
          throw DataError(row_ref + ": non-finite value for continuous feature '" + spec.name + "'");
        }
        throw DataError(row_ref + ": value " + std::string(trim(fields[2 + f])) +
                        " out of range for feature '" + spec.name + "' (cardinality " +
                        std::to_string(spec.level_count()) + ")");
      }
      values.push_back(v);
    }
  }
  if (row_dates.empty()) throw DataError(csv_path.string() + ": no data rows");

  std::vector<Date> day_dates;
  {
    std::vector<Date> sorted = row_dates;
    std::sort(sorted.begin(), sorted.end());
    day_dates.push_back(sorted.front());
    for (const Date& d : sorted) {
      if (d == day_dates.back()) continue;
      if (d - day_dates.back() != 1) {
        throw DataError(csv_path.string() + ": non-consecutive dates (" + day_dates.back().iso() +
                        " then " + d.iso() + ")");
      }
      day_dates.push_back(d);
    }
  }

  std::vector<int> day_index(row_dates.size());
  const Date first = day_dates.front();
  for (std::size_t r = 0; r < row_dates.size(); ++r) day_index[r] = row_dates[r] - first;

  return TransactionTable(std::move(schema), std::move(day_dates), std::move(day_index),
                          std::move(values), std::move(labels));
}

inline void save_csv(const TransactionTable& table, const std::filesystem::path& csv_path) {
  std::string text = "date,label";
  for (const auto& f : table.schema().features()) {
    text += ',';
    text += f.name;
  }
  text += '\n';
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    text += table.date_of_day(table.day_of_row(r)).iso();
    text += ',';
    text += static_cast<char>('0' + table.label(r));
    for (std::size_t f = 0; f < table.n_features(); ++f) {
      text += ',';
      double v = table.value(r, f);
      if (table.schema().at(f).kind == FeatureKind::kContinuous) {
        text += format_double(v);
      } else {
        text += std::to_string(static_cast<long long>(v));
      }
    }
    text += '\n';
  }
  write_text_file(csv_path, text);
}

}  // namespace dayshift
