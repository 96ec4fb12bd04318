#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pct/binning.hpp"
#include "pct/compare.hpp"
#include "pct/config.hpp"
#include "pct/phantom.hpp"
#include "pct/simulator.hpp"
#include "pct/thresholds.hpp"

namespace pct {

struct PipelineConfig {
  PhantomSpec phantom;
  ScanConfig scan;
  BinningConfig binning;
  AlgorithmThresholds thresholds;
  GridSpec recon_grid;
  std::vector<std::string> algorithms = {"fbp", "sc", "msc", "sm"};
  std::filesystem::path out_dir = "out";
  int threads = 0;
  bool export_slices = false;
};

/// Reads a pipeline config file. Scan keys carry the `scan.` prefix, binning
/// `binning.`, thresholds `thresholds.`, the reconstruction grid `recon.`;
/// the phantom comes from `phantom_file` (resolved against the config's
/// directory) or inline `phantom.` keys. `algorithms` selects a subset of
/// fbp/sc/msc/sm.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

struct AlgoOutcome {
  std::string name;
  HullComparison comparison;
  double detect_seconds = 0.0;
};

struct PipelineResult {
  std::vector<AlgoOutcome> rows;
  std::size_t histories_total = 0;
  std::size_t histories_kept = 0;
  HullMask truth;
  std::map<std::string, HullMask> masks;
  std::filesystem::path comparison_txt;
};

/// simulate -> cut -> selected detections -> compare -> report. Writes the
/// history files, masks, the ground-truth mask and the comparison tables into
/// out_dir. Wall times are reported on stdout and in a separate timing file so
/// the comparison artifacts stay byte-reproducible under a fixed seed.
PipelineResult run_pipeline(const PipelineConfig& cfg);

struct BenchRow {
  std::string name;
  double min_seconds = 0.0;
  double median_seconds = 0.0;
  std::vector<double> runs;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::size_t raw_histories = 0;
  std::size_t cut_histories = 0;
  GridSpec grid;
  int threads = 0;
  AlgorithmThresholds thresholds;
};

/// Prepares the inputs once (simulation, cuts, binning), then wall-times each
/// selected algorithm's detection stage `repeats` times. File I/O and
/// simulation stay outside the timed sections.
BenchReport run_benchmark(const PipelineConfig& cfg, int repeats = 3);

std::string format_bench_report(const BenchReport& report);

}  // namespace pct
