#pragma once

// Subcommand implementations behind the CLI: generate -> matrix -> cluster ->
// evaluate, plus artifact verification. Each stage writes its outputs and a
// `.meta` sidecar carrying tool version, config hash, seed and file
// fingerprints, so later stages and `verify` can detect stale or tampered
// inputs.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dayshift/calendar.hpp"
#include "dayshift/clustering.hpp"
#include "dayshift/config.hpp"
#include "dayshift/errors.hpp"
#include "dayshift/fraudeval.hpp"
#include "dayshift/heatmap.hpp"
#include "dayshift/shiftmatrix.hpp"
#include "dayshift/synthgen.hpp"
#include "dayshift/table.hpp"
#include "dayshift/util.hpp"
#include "dayshift/version.hpp"

namespace dayshift {

namespace command_detail {

inline std::string tool_version_string() {
  return std::string(kToolName) + " " + kToolVersion;
}

inline KvPairs base_meta(const RunConfig& cfg) {
  return {
      {"tool_version", tool_version_string()},
      {"config_hash", to_hex(config_hash(cfg))},
      {"seed", std::to_string(cfg.seed)},
  };
}

inline void add_file_hashes(KvPairs& meta, const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) {
    meta.emplace_back("hash." + f.filename().string(), to_hex(fnv1a_file(f)));
  }
}

inline std::uint64_t dataset_fingerprint(const std::filesystem::path& csv,
                                         const std::filesystem::path& schema) {
  return fnv1a(read_text_file(schema), fnv1a_file(csv));
}

inline std::filesystem::path schema_path_for(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_extension(".schema");
  return p;
}

inline TransactionTable load_dataset(const RunConfig& cfg) {
  if (cfg.dataset.empty()) throw ConfigError("no dataset given (use --dataset or the config file)");
  const std::filesystem::path csv(cfg.dataset);
  if (!std::filesystem::exists(csv)) throw DataError("dataset not found: " + csv.string());
  return load_csv(csv, schema_path_for(csv));
}

}  // namespace command_detail

inline void cmd_generate(const RunConfig& cfg) {
  using namespace command_detail;
  const CalendarModel cal = cfg.make_calendar();
  const GenParams params = cfg.gen_params();
  const TransactionTable table = generate(cal, params);

  std::filesystem::create_directories(cfg.out_dir);
  const auto csv = cfg.out_path(cfg.name + ".csv");
  const auto schema = cfg.out_path(cfg.name + ".schema");
  const auto daytypes = cfg.out_path(cfg.name + ".daytypes.csv");
  save_csv(table, csv);
  table.schema().save(schema);
  save_day_types(daytypes, cal);

  KvPairs meta = base_meta(cfg);
  meta.emplace_back("calendar", cfg.calendar);
  meta.emplace_back("delta", format_double(cfg.delta));
  meta.emplace_back("tx_per_day", std::to_string(cfg.tx_per_day));
  meta.emplace_back("n_days", std::to_string(table.n_days()));
  meta.emplace_back("n_rows", std::to_string(table.n_rows()));
  add_file_hashes(meta, {csv, schema, daytypes});
  write_kv_file(cfg.out_path(cfg.name + ".meta"), meta);

  std::cout << "wrote " << csv.string() << " (" << table.n_rows() << " rows over " << table.n_days()
            << " days)\n";
}

inline void cmd_matrix(const RunConfig& cfg) {
  using namespace command_detail;
  const std::filesystem::path csv(cfg.dataset.empty() ? std::string() : cfg.dataset);
  if (cfg.dataset.empty()) throw ConfigError("matrix needs --dataset");
  const std::uint64_t data_hash = dataset_fingerprint(csv, schema_path_for(csv));
  const PairProtocol proto = cfg.pair_protocol();

  std::filesystem::create_directories(cfg.out_dir);
  const auto stem = cfg.out_path("matrix");
  const ShiftMatrixPaths paths(stem);

  if (std::filesystem::exists(paths.meta)) {
    const KvPairs meta = read_kv_file(paths.meta);
    const bool same_dataset = kv_get(meta, "dataset_hash", paths.meta.string()) == to_hex(data_hash);
    const bool same_protocol =
        kv_get(meta, "seed", paths.meta.string()) == std::to_string(proto.seed) &&
        kv_get(meta, "n_train_per_day", paths.meta.string()) == std::to_string(proto.n_train_per_day) &&
        kv_get(meta, "n_test_per_day", paths.meta.string()) == std::to_string(proto.n_test_per_day) &&
        kv_get(meta, "n_repeats", paths.meta.string()) == std::to_string(proto.n_repeats) &&
        kv_get(meta, "forest_n_trees", paths.meta.string()) == std::to_string(proto.forest.n_trees);
    if (same_dataset && same_protocol && std::filesystem::exists(paths.csv) &&
        std::filesystem::exists(paths.raw_csv)) {
      std::cout << "matrix is up to date (" << paths.csv.string() << ")\n";
      return;
    }
    if (!cfg.force) {
      throw DataError("existing matrix at " + paths.csv.string() +
                      " was built from a different dataset or protocol; pass --force to recompute");
    }
  }

  const TransactionTable table = load_dataset(cfg);
  const std::size_t n_pairs =
      static_cast<std::size_t>(table.n_days()) * static_cast<std::size_t>(table.n_days() - 1) / 2;
  std::cerr << "computing " << n_pairs << " day pairs...\n";
  const ShiftMatrix matrix = build_matrix(table, proto, cfg.workers, [&](std::size_t done, std::size_t total) {
    if (done % 250 == 0 || done == total) std::cerr << "  " << done << "/" << total << " pairs\n";
  });

  save_shift_matrix(matrix, stem, proto, data_hash, config_hash(cfg));
  write_heatmap_ppm(matrix, cfg.out_path("heatmap.ppm"), cfg.cell_px);
  write_heatmap_pgm(matrix, cfg.out_path("heatmap_gray.pgm"), cfg.cell_px);
  std::cout << "wrote " << paths.csv.string() << ", heatmap.ppm, heatmap_gray.pgm\n";
}

inline void cmd_cluster(const RunConfig& cfg) {
  using namespace command_detail;
  const auto stem = cfg.out_path("matrix");
  if (!std::filesystem::exists(ShiftMatrixPaths(stem).csv)) {
    throw DataError("no matrix at " + ShiftMatrixPaths(stem).csv.string() + " (run the matrix command first)");
  }
  const ShiftMatrix matrix = load_shift_matrix(stem);
  const Linkage linkage = parse_linkage(cfg.linkage);
  if (cfg.k < 1 || cfg.k > matrix.n_days) throw ConfigError("k must lie in [1, n_days]");

  const Dendrogram dendro = agglomerate(matrix, linkage);
  ClusterAssignment assignment = cfg.no_leak
                                     ? assign_no_leak(matrix, cfg.k, cfg.first_test_start, linkage)
                                     : cut(dendro, cfg.k, matrix.day_dates);
  if (assignment.day_dates.empty()) assignment.day_dates = matrix.day_dates;

  const int k_max = std::min(cfg.curve_k_max, matrix.n_days);
  const auto curve = intercluster_curve(matrix, dendro, std::max(2, k_max));

  const auto newick_path = cfg.out_path("dendrogram.newick");
  const auto assignment_path = cfg.out_path("assignment.csv");
  const auto curve_path = cfg.out_path("curve.csv");
  const auto grid_path = cfg.out_path("weekly_grid.txt");

  write_text_file(newick_path, to_newick(dendro, matrix.day_dates));
  save_assignment(assignment, assignment_path);
  {
    std::string text = "k,avg_intercluster_distance\n";
    for (const auto& [k, v] : curve) text += std::to_string(k) + "," + format_double(v) + "\n";
    write_text_file(curve_path, text);
  }
  write_text_file(grid_path, weekly_grid(assignment));

  KvPairs meta = base_meta(cfg);
  meta.emplace_back("assignment_mode", cfg.no_leak ? "no-leak" : "full");
  meta.emplace_back("k", std::to_string(cfg.k));
  meta.emplace_back("linkage", std::string(linkage_name(linkage)));
  if (cfg.no_leak) meta.emplace_back("no_leak_cutoff_day", std::to_string(cfg.first_test_start));
  add_file_hashes(meta, {newick_path, assignment_path, curve_path, grid_path});
  write_kv_file(cfg.out_path("cluster.meta"), meta);

  std::cout << "wrote " << assignment_path.string() << " (k=" << cfg.k << ", "
            << linkage_name(linkage) << " linkage)\n";
}

inline void cmd_evaluate(const RunConfig& cfg) {
  using namespace command_detail;
  const TransactionTable table = load_dataset(cfg);

  const auto assignment_path = cfg.out_path("assignment.csv");
  if (!std::filesystem::exists(assignment_path)) {
    throw DataError("no assignment at " + assignment_path.string() + " (run the cluster command first)");
  }
  const ClusterAssignment assignment = load_assignment(assignment_path);

  std::string mode = "full";
  const auto cluster_meta_path = cfg.out_path("cluster.meta");
  if (std::filesystem::exists(cluster_meta_path)) {
    if (const std::string* m = kv_find(read_kv_file(cluster_meta_path), "assignment_mode")) mode = *m;
  }
  if (cfg.no_leak && mode != "no-leak") {
    throw ConfigError("--no-leak requested but the stored assignment was clustered in '" + mode +
                      "' mode; re-run the cluster command with --no-leak");
  }

  const std::vector<FoldSpec> folds = make_folds(table.n_days(), cfg.folds, cfg.first_test_start);
  EvalReport report = run_protocol(table, assignment, folds, cfg.forest_params());
  report.assignment_mode = mode;

  const auto report_csv_path = cfg.out_path("report.csv");
  const auto report_txt_path = cfg.out_path("report.txt");
  write_text_file(report_csv_path, report_csv(report));
  write_text_file(report_txt_path, report_text(report));

  KvPairs meta = base_meta(cfg);
  meta.emplace_back("assignment_mode", mode);
  meta.emplace_back("folds", std::to_string(cfg.folds));
  meta.emplace_back("first_test_start", std::to_string(cfg.first_test_start));
  add_file_hashes(meta, {report_csv_path, report_txt_path});
  write_kv_file(cfg.out_path("evaluate.meta"), meta);

  std::cout << report_text(report);
}

/// Rechecks every `hash.<file>` fingerprint recorded in the out directory's
/// .meta files. Returns false if anything is missing or was modified.
inline bool cmd_verify(const RunConfig& cfg) {
  bool all_ok = true;
  bool any_meta = false;
  std::vector<std::filesystem::path> meta_files;
  for (const auto& entry : std::filesystem::directory_iterator(cfg.out_dir)) {
    if (entry.path().extension() == ".meta") meta_files.push_back(entry.path());
  }
  std::sort(meta_files.begin(), meta_files.end());
  for (const auto& meta_path : meta_files) {
    any_meta = true;
    for (const auto& [key, value] : read_kv_file(meta_path)) {
      if (key.rfind("hash.", 0) != 0) continue;
      const auto file = std::filesystem::path(cfg.out_dir) / key.substr(5);
      std::string status;
      if (!std::filesystem::exists(file)) {
        status = "MISSING";
        all_ok = false;
      } else if (to_hex(fnv1a_file(file)) != value) {
        status = "TAMPERED";
        all_ok = false;
      } else {
        status = "OK";
      }
      std::cout << status << "  " << file.filename().string() << "  (per " << meta_path.filename().string()
                << ")\n";
    }
  }
  if (!any_meta) {
    std::cout << "nothing to verify in " << cfg.out_dir << "\n";
  }
  return all_ok;
}

}  // namespace dayshift
