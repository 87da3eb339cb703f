// dayshift CLI: synthesize day-structured transaction data, quantify day-to-day
// covariate shift, cluster the days, and evaluate the cluster feature in a
// sliding-window fraud-detection protocol.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "dayshift/commands.hpp"
#include "dayshift/config.hpp"
#include "dayshift/errors.hpp"
#include "dayshift/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInfeasible = 3;

struct CliOptions {
  dayshift::RunConfig values;  // CLI-entered values; merged over file values
  std::string config_file;
};

// Copies an option's value into the effective config only when the user set it
// on the command line, preserving the CLI > file > defaults precedence.
template <typename T>
void apply_if_set(const CLI::App& cmd, const std::string& flag, T& dst, const T& src) {
  const CLI::Option* opt = cmd.get_option_no_throw(flag);
  if (opt != nullptr && opt->count() > 0) dst = src;
}

void add_shared_options(CLI::App& cmd, CliOptions& cli) {
  cmd.add_option("--config", cli.config_file, "flat key = value config file");
  cmd.add_option("--seed", cli.values.seed, "global seed recorded into every artifact");
  cmd.add_option("--workers", cli.values.workers, "worker threads (0 = hardware concurrency)");
  cmd.add_option("--out", cli.values.out_dir, "output directory");
}

dayshift::RunConfig merge_config(const CLI::App& cmd, const CliOptions& cli) {
  dayshift::RunConfig cfg;  // defaults
  if (!cli.config_file.empty()) dayshift::apply_config_file(cfg, cli.config_file);
  apply_if_set(cmd, "--seed", cfg.seed, cli.values.seed);
  apply_if_set(cmd, "--workers", cfg.workers, cli.values.workers);
  apply_if_set(cmd, "--out", cfg.out_dir, cli.values.out_dir);
  apply_if_set(cmd, "--dataset", cfg.dataset, cli.values.dataset);
  apply_if_set(cmd, "--name", cfg.name, cli.values.name);
  apply_if_set(cmd, "--calendar", cfg.calendar, cli.values.calendar);
  apply_if_set(cmd, "--delta", cfg.delta, cli.values.delta);
  apply_if_set(cmd, "--tx-per-day", cfg.tx_per_day, cli.values.tx_per_day);
  apply_if_set(cmd, "--fraud-base-rate", cfg.fraud_base_rate, cli.values.fraud_base_rate);
  apply_if_set(cmd, "--train-per-day", cfg.train_per_day, cli.values.train_per_day);
  apply_if_set(cmd, "--test-per-day", cfg.test_per_day, cli.values.test_per_day);
  apply_if_set(cmd, "--repeats", cfg.repeats, cli.values.repeats);
  apply_if_set(cmd, "--trees", cfg.n_trees, cli.values.n_trees);
  apply_if_set(cmd, "--min-samples-leaf", cfg.min_samples_leaf, cli.values.min_samples_leaf);
  apply_if_set(cmd, "--cell-px", cfg.cell_px, cli.values.cell_px);
  apply_if_set(cmd, "--k", cfg.k, cli.values.k);
  apply_if_set(cmd, "--linkage", cfg.linkage, cli.values.linkage);
  apply_if_set(cmd, "--curve-k-max", cfg.curve_k_max, cli.values.curve_k_max);
  apply_if_set(cmd, "--no-leak", cfg.no_leak, cli.values.no_leak);
  apply_if_set(cmd, "--folds", cfg.folds, cli.values.folds);
  apply_if_set(cmd, "--first-test-start", cfg.first_test_start, cli.values.first_test_start);
  apply_if_set(cmd, "--force", cfg.force, cli.values.force);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"day-level dataset shift quantification pipeline"};
  app.set_version_flag("--version", std::string(dayshift::kToolName) + " " + dayshift::kToolVersion);
  app.require_subcommand(1);

  CliOptions cli;

  CLI::App* generate = app.add_subcommand("generate", "synthesize a dataset with planted day-types");
  add_shared_options(*generate, cli);
  generate->add_option("--name", cli.values.name, "dataset file stem");
  generate->add_option("--calendar", cli.values.calendar, "calendar model (belgian2015)");
  generate->add_option("--delta", cli.values.delta, "day-type separation (0 = no shift)");
  generate->add_option("--tx-per-day", cli.values.tx_per_day, "mean transactions per day");
  generate->add_option("--fraud-base-rate", cli.values.fraud_base_rate, "baseline fraud probability");

  CLI::App* matrix = app.add_subcommand("matrix", "build the day-by-day shift distance matrix");
  add_shared_options(*matrix, cli);
  matrix->add_option("--dataset", cli.values.dataset, "dataset CSV (schema at <stem>.schema)");
  matrix->add_option("--train-per-day", cli.values.train_per_day, "train rows sampled per day");
  matrix->add_option("--test-per-day", cli.values.test_per_day, "test rows sampled per day");
  matrix->add_option("--repeats", cli.values.repeats, "repetitions averaged per pair");
  matrix->add_option("--trees", cli.values.n_trees, "trees per pair classifier");
  matrix->add_option("--min-samples-leaf", cli.values.min_samples_leaf, "minimum rows per leaf");
  matrix->add_option("--cell-px", cli.values.cell_px, "heatmap pixels per matrix cell");
  matrix->add_flag("--force", cli.values.force, "recompute even if a mismatched matrix exists");

  CLI::App* cluster = app.add_subcommand("cluster", "cluster days from the distance matrix");
  add_shared_options(*cluster, cli);
  cluster->add_option("--k", cli.values.k, "number of day clusters");
  cluster->add_option("--linkage", cli.values.linkage, "average|single|complete");
  cluster->add_option("--curve-k-max", cli.values.curve_k_max, "largest k in the diagnostic curve");
  cluster->add_flag("--no-leak", cli.values.no_leak,
                    "cluster only pre-test days; assign later days by distance");
  cluster->add_option("--first-test-start", cli.values.first_test_start,
                      "day index separating pre-test days in --no-leak mode");

  CLI::App* evaluate = app.add_subcommand("evaluate", "run the sliding-window fraud evaluation");
  add_shared_options(*evaluate, cli);
  evaluate->add_option("--dataset", cli.values.dataset, "dataset CSV (schema at <stem>.schema)");
  evaluate->add_option("--folds", cli.values.folds, "number of folds");
  evaluate->add_option("--first-test-start", cli.values.first_test_start, "day index of fold 0's test window");
  evaluate->add_option("--trees", cli.values.n_trees, "trees per fraud classifier");
  evaluate->add_option("--min-samples-leaf", cli.values.min_samples_leaf, "minimum rows per leaf");
  evaluate->add_flag("--no-leak", cli.values.no_leak, "require a no-leak cluster assignment");

  CLI::App* verify = app.add_subcommand("verify", "recheck artifact fingerprints in the output directory");
  add_shared_options(*verify, cli);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    const dayshift::RunConfig cfg = merge_config(*active, cli);
    if (active == generate) {
      dayshift::cmd_generate(cfg);
    } else if (active == matrix) {
      dayshift::cmd_matrix(cfg);
    } else if (active == cluster) {
      dayshift::cmd_cluster(cfg);
    } else if (active == evaluate) {
      dayshift::cmd_evaluate(cfg);
    } else if (active == verify) {
      if (!dayshift::cmd_verify(cfg)) return kExitData;
    }
  } catch (const dayshift::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dayshift::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const dayshift::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}
