#pragma once

// Run configuration shared by the CLI subcommands. Values merge with the
// precedence CLI flag > config file > built-in default.

#include <cstdint>
#include <filesystem>
#include <string>

#include "dayshift/calendar.hpp"
#include "dayshift/errors.hpp"
#include "dayshift/forest.hpp"
#include "dayshift/shiftmatrix.hpp"
#include "dayshift/synthgen.hpp"
#include "dayshift/util.hpp"

namespace dayshift {

struct RunConfig {
  // Shared
  std::string out_dir = ".";
  std::string dataset;  // path to the dataset CSV; schema expected at <stem>.schema
  std::uint64_t seed = 42;
  int workers = 0;  // 0 = hardware concurrency
  bool force = false;

  // generate
  std::string name = "dataset";
  std::string calendar = "belgian2015";
  double delta = 1.0;
  int tx_per_day = 3000;
  double fraud_base_rate = 0.012;
  double mult_working = 1.0;
  double mult_saturday = 2.0;
  double mult_sunday_holiday = 4.0;
  double mult_school_holiday = 2.0;

  // matrix
  int train_per_day = 20000;
  int test_per_day = 5000;
  int repeats = 1;
  int n_trees = 100;
  int n_features_per_split = 0;
  int min_samples_leaf = 10;
  bool bootstrap = true;
  int cell_px = 6;

  // cluster
  int k = 4;
  std::string linkage = "average";
  int curve_k_max = 15;
  bool no_leak = false;

  // evaluate
  int folds = 5;
  int first_test_start = 15;

  CalendarModel make_calendar() const {
    if (calendar == "belgian2015") return belgian_calendar_2015();
    throw ConfigError("unknown calendar: '" + calendar + "' (available: belgian2015)");
  }

  GenParams gen_params() const {
    GenParams p;
    p.separation = delta;
    p.tx_per_day = tx_per_day;
    p.fraud_base_rate = fraud_base_rate;
    p.fraud_rate_multiplier = {mult_working, mult_saturday, mult_sunday_holiday, mult_school_holiday};
    p.seed = seed;
    return p;
  }

  ForestParams forest_params() const {
    ForestParams p;
    p.n_trees = n_trees;
    p.n_features_per_split = n_features_per_split;
    p.min_samples_leaf = min_samples_leaf;
    p.seed = seed;
    p.bootstrap = bootstrap;
    return p;
  }

  PairProtocol pair_protocol() const {
    PairProtocol p;
    p.n_train_per_day = train_per_day;
    p.n_test_per_day = test_per_day;
    p.forest = forest_params();
    p.seed = seed;
    p.n_repeats = repeats;
    return p;
  }

  std::filesystem::path out_path(const std::string& file) const {
    return std::filesystem::path(out_dir) / file;
  }

  std::filesystem::path dataset_stem() const {
    std::filesystem::path p(dataset);
    p.replace_extension();
    return p;
  }
};

// Applies `key = value` entries from a config file. Unknown keys are usage errors.
inline void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  auto as_bool = [&](const std::string& v, const std::string& key) {
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
  };
  for (const auto& [key, value] : read_kv_file(path)) {
    try {
      if (key == "out") cfg.out_dir = value;
      else if (key == "dataset") cfg.dataset = value;
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(value, key));
      else if (key == "workers") cfg.workers = static_cast<int>(parse_int(value, key));
      else if (key == "name") cfg.name = value;
      else if (key == "calendar") cfg.calendar = value;
      else if (key == "delta") cfg.delta = parse_double(value, key);
      else if (key == "tx_per_day") cfg.tx_per_day = static_cast<int>(parse_int(value, key));
      else if (key == "fraud_base_rate") cfg.fraud_base_rate = parse_double(value, key);
      else if (key == "mult_working") cfg.mult_working = parse_double(value, key);
      else if (key == "mult_saturday") cfg.mult_saturday = parse_double(value, key);
      else if (key == "mult_sunday_holiday") cfg.mult_sunday_holiday = parse_double(value, key);
      else if (key == "mult_school_holiday") cfg.mult_school_holiday = parse_double(value, key);
      else if (key == "train_per_day") cfg.train_per_day = static_cast<int>(parse_int(value, key));
      else if (key == "test_per_day") cfg.test_per_day = static_cast<int>(parse_int(value, key));
      else if (key == "repeats") cfg.repeats = static_cast<int>(parse_int(value, key));
      else if (key == "n_trees") cfg.n_trees = static_cast<int>(parse_int(value, key));
      else if (key == "n_features_per_split") cfg.n_features_per_split = static_cast<int>(parse_int(value, key));
      else if (key == "min_samples_leaf") cfg.min_samples_leaf = static_cast<int>(parse_int(value, key));
      else if (key == "bootstrap") cfg.bootstrap = as_bool(value, key);
      else if (key == "cell_px") cfg.cell_px = static_cast<int>(parse_int(value, key));
      else if (key == "k") cfg.k = static_cast<int>(parse_int(value, key));
      else if (key == "linkage") cfg.linkage = value;
      else if (key == "curve_k_max") cfg.curve_k_max = static_cast<int>(parse_int(value, key));
      else if (key == "no_leak") cfg.no_leak = as_bool(value, key);
      else if (key == "folds") cfg.folds = static_cast<int>(parse_int(value, key));
      else if (key == "first_test_start") cfg.first_test_start = static_cast<int>(parse_int(value, key));
      else throw ConfigError("unknown config key: '" + key + "'");
    } catch (const DataError& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }
}

// Fingerprint of the effective configuration, recorded into artifact metadata.
inline std::uint64_t config_hash(const RunConfig& c) {
  std::string s;
  s += c.out_dir + '\n' + c.dataset + '\n' + std::to_string(c.seed) + '\n';
  s += c.name + '\n' + c.calendar + '\n' + format_double(c.delta) + '\n' + std::to_string(c.tx_per_day) + '\n';
  s += format_double(c.fraud_base_rate) + '\n' + format_double(c.mult_working) + '\n' +
       format_double(c.mult_saturday) + '\n' + format_double(c.mult_sunday_holiday) + '\n' +
       format_double(c.mult_school_holiday) + '\n';
  s += std::to_string(c.train_per_day) + '\n' + std::to_string(c.test_per_day) + '\n' +
       std::to_string(c.repeats) + '\n';
  s += std::to_string(c.n_trees) + '\n' + std::to_string(c.n_features_per_split) + '\n' +
       std::to_string(c.min_samples_leaf) + '\n' + (c.bootstrap ? "1" : "0") + '\n';
  s += std::to_string(c.cell_px) + '\n' + std::to_string(c.k) + '\n' + c.linkage + '\n' +
       std::to_string(c.curve_k_max) + '\n' + (c.no_leak ? "1" : "0") + '\n';
  s += std::to_string(c.folds) + '\n' + std::to_string(c.first_test_start) + '\n';
  return fnv1a(s);
}

}  // namespace dayshift
