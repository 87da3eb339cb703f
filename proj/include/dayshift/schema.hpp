#pragma once

// Feature declarations for transaction tables. Every column is continuous,
// categorical with a fixed cardinality, or binary. Binary columns share the
// categorical code path with two levels.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dayshift/errors.hpp"
#include "dayshift/util.hpp"

namespace dayshift {

enum class FeatureKind { kContinuous, kCategorical, kBinary };

inline std::string_view feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kContinuous: return "continuous";
    case FeatureKind::kCategorical: return "categorical";
    case FeatureKind::kBinary: return "binary";
  }
  return "?";
}

inline FeatureKind parse_feature_kind(std::string_view s) {
  if (s == "continuous") return FeatureKind::kContinuous;
  if (s == "categorical") return FeatureKind::kCategorical;
  if (s == "binary") return FeatureKind::kBinary;
  throw DataError("unknown feature kind: '" + std::string(s) + "'");
}

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::kContinuous;
  int cardinality = 0;  // categorical only

  // Number of discrete levels for split purposes; 0 for continuous.
  int level_count() const {
    if (kind == FeatureKind::kCategorical) return cardinality;
    if (kind == FeatureKind::kBinary) return 2;
    return 0;
  }

  bool operator==(const FeatureSpec&) const = default;
};

class FeatureSchema {
 public:
  FeatureSchema() = default;

  explicit FeatureSchema(std::vector<FeatureSpec> features) : features_(std::move(features)) {
    for (std::size_t i = 0; i < features_.size(); ++i) {
      const FeatureSpec& f = features_[i];
      if (f.name.empty()) throw DataError("feature " + std::to_string(i) + " has an empty name");
      for (char c : f.name) {
        if (c == ',' || c == '#' || c == ' ' || c == '\t') {
          throw DataError("feature name contains a reserved character: '" + f.name + "'");
        }
      }
      if (f.kind == FeatureKind::kCategorical && f.cardinality < 2) {
        throw DataError("categorical feature '" + f.name + "' needs cardinality >= 2");
      }
      if (f.kind != FeatureKind::kCategorical && f.cardinality != 0) {
        throw DataError("feature '" + f.name + "': cardinality is only valid for categorical kind");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (features_[j].name == f.name) throw DataError("duplicate feature name: '" + f.name + "'");
      }
    }
  }

  std::size_t size() const { return features_.size(); }
  bool empty() const { return features_.empty(); }
  const FeatureSpec& at(std::size_t i) const { return features_.at(i); }
  const std::vector<FeatureSpec>& features() const { return features_; }

  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < features_.size(); ++i) {
      if (features_[i].name == name) return static_cast<int>(i);
    }
    return -1;
  }

  bool value_in_domain(std::size_t feature, double v) const {
    const FeatureSpec& f = features_.at(feature);
    if (f.kind == FeatureKind::kContinuous) return std::isfinite(v);
    int levels = f.level_count();
    return std::isfinite(v) && v == std::floor(v) && v >= 0.0 && v < static_cast<double>(levels);
  }

  bool operator==(const FeatureSchema&) const = default;

  // Schema file: one `name,kind[,cardinality]` per line, `#` comments allowed.
  static FeatureSchema load(const std::filesystem::path& path) {
    std::vector<FeatureSpec> specs;
    int line_no = 0;
    for (const auto& raw : split_lines(read_text_file(path))) {
      ++line_no;
      std::string_view line = trim(raw);
      if (line.empty() || line.front() == '#') continue;
      auto fields = split(line, ',');
      if (fields.size() != 2 && fields.size() != 3) {
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'name,kind[,cardinality]'");
      }
      FeatureSpec spec;
      spec.name = std::string(trim(fields[0]));
      spec.kind = parse_feature_kind(trim(fields[1]));
      if (fields.size() == 3) {
        if (spec.kind != FeatureKind::kCategorical) {
          throw DataError(path.string() + ":" + std::to_string(line_no) +
                          ": cardinality given for non-categorical feature");
        }
        spec.cardinality = static_cast<int>(parse_int(fields[2], "cardinality"));
      } else if (spec.kind == FeatureKind::kCategorical) {
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": categorical feature needs a cardinality");
      }
      specs.push_back(std::move(spec));
    }
    return FeatureSchema(std::move(specs));
  }

  void save(const std::filesystem::path& path) const {
    std::string text;
    for (const FeatureSpec& f : features_) {
      text += f.name;
      text += ',';
      text += feature_kind_name(f.kind);
      if (f.kind == FeatureKind::kCategorical) {
        text += ',';
        text += std::to_string(f.cardinality);
      }
      text += '\n';
    }
    write_text_file(path, text);
  }

 private:
  std::vector<FeatureSpec> features_;
};

}  // namespace dayshift
