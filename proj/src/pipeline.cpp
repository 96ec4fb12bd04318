#include "pct/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "pct/fbp.hpp"
#include "pct/history_io.hpp"
#include "pct/hull_msc.hpp"
#include "pct/hull_sc.hpp"
#include "pct/hull_sm.hpp"
#include "pct/image_io.hpp"

namespace pct {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Fn>
auto run_stage(const std::string& stage, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error("stage '" + stage + "': " + e.what());
  }
}

void validate_algorithms(const std::vector<std::string>& algos) {
  for (const auto& a : algos)
    if (a != "fbp" && a != "sc" && a != "msc" && a != "sm")
      throw std::invalid_argument("unknown algorithm '" + a + "'");
}

std::string comparison_table(const std::vector<AlgoOutcome>& rows,
                             const GridSpec& grid, std::uint64_t truth_count) {
  std::ostringstream out;
  out << "Hull comparison vs ground truth\n";
  out << "Grid: " << grid.nx << " x " << grid.ny << " x " << grid.nz << " voxels ("
      << grid.voxel_size_x << " x " << grid.voxel_size_y << " x " << grid.slice_thickness
      << " mm)\n";
  out << "Truth voxels: " << truth_count << "\n\n";
  auto name_of = [](const std::string& a) {
    std::string up = a;
    std::transform(up.begin(), up.end(), up.begin(), ::toupper);
    return up;
  };
  out << std::left << std::setw(16) << "Metric";
  for (const auto& r : rows) out << std::right << std::setw(12) << name_of(r.name);
  out << "\n";
  out << std::left << std::setw(16) << "Missing Voxels";
  for (const auto& r : rows) out << std::right << std::setw(12) << r.comparison.missing;
  out << "\n";
  out << std::left << std::setw(16) << "Extra Voxels";
  for (const auto& r : rows) out << std::right << std::setw(12) << r.comparison.extra;
  out << "\n";
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "'");
  out << text;
}

void export_mask_slices(const HullMask& mask, const std::filesystem::path& dir,
                        const std::string& name) {
  std::filesystem::create_directories(dir);
  for (int iz = 0; iz < mask.grid().nz; ++iz) {
    std::ostringstream file;
    file << name << "_z" << std::setw(2) << std::setfill('0') << iz << ".pgm";
    export_slice_image(mask.slice(iz).cast<double>(), dir / file.str(),
                       ImageNormalization{1.0});
  }
}

struct PreparedData {
  RspGrid phantom;
  HullMask truth;
  std::vector<ProtonHistory> raw;
  CutResult cut;
};

PreparedData prepare_inputs(const PipelineConfig& cfg) {
  PreparedData data;
  run_stage("phantom", [&] {
    data.phantom = rasterize_phantom(cfg.phantom);
    data.truth = true_hull(rasterize_onto(cfg.phantom, cfg.recon_grid));
    return 0;
  });
  run_stage("simulate", [&] {
    data.raw = generate_histories(data.phantom, cfg.scan, cfg.threads);
    return 0;
  });
  run_stage("cut", [&] {
    const BinGrid bins = bin_histories(data.raw, cfg.binning);
    data.cut = apply_data_cuts(data.raw, bins);
    return 0;
  });
  return data;
}

struct TimedDetections {
  std::map<std::string, HullMask> masks;
  std::map<std::string, double> seconds;
};

TimedDetections detect_all(const PipelineConfig& cfg, const PreparedData& data) {
  TimedDetections out;
  for (const std::string& algo : cfg.algorithms) {
    run_stage("hull:" + algo, [&] {
      const auto t0 = Clock::now();
      if (algo == "sc") {
        out.masks[algo] =
            sc_detect(data.cut.bins, cfg.recon_grid, cfg.thresholds, cfg.threads).hull;
      } else if (algo == "msc") {
        out.masks[algo] =
            msc_detect(data.raw, cfg.recon_grid, cfg.thresholds, cfg.threads).hull;
      } else if (algo == "sm") {
        out.masks[algo] =
            sm_detect(data.raw, cfg.recon_grid, cfg.thresholds, cfg.threads).hull;
      } else {
        const Sinogram sino = build_sinogram(data.cut.bins);
        const RspGrid recon = fbp_reconstruct(sino, cfg.recon_grid, cfg.threads);
        out.masks[algo] = fbp_hull(recon, cfg.thresholds);
      }
      out.seconds[algo] = seconds_since(t0);
      return 0;
    });
  }
  return out;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  const KeyValueFile kv = KeyValueFile::parse_file(path);
  PipelineConfig cfg;
  if (kv.has("phantom_file")) {
    std::filesystem::path pf = kv.get_string("phantom_file");
    if (pf.is_relative()) pf = path.parent_path() / pf;
    cfg.phantom = load_phantom_spec(pf);
  } else {
    cfg.phantom = phantom_from_keyvalues(kv, "phantom.");
  }
  cfg.scan = scan_from_keyvalues(kv, "scan.");
  cfg.binning = binning_from_keyvalues(kv, "binning.");
  cfg.thresholds = thresholds_from_keyvalues(kv, "thresholds.");
  cfg.recon_grid = grid_from_keyvalues(kv, "recon.");
  if (kv.has("algorithms")) {
    std::istringstream in(kv.get_string("algorithms"));
    cfg.algorithms.clear();
    std::string a;
    while (in >> a) cfg.algorithms.push_back(a);
  }
  validate_algorithms(cfg.algorithms);
  cfg.export_slices = kv.get_bool("export_slices", cfg.export_slices);
  return cfg;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  validate_algorithms(cfg.algorithms);
  std::filesystem::create_directories(cfg.out_dir);

  PreparedData data = prepare_inputs(cfg);
  run_stage("write-histories", [&] {
    write_histories(cfg.out_dir / "histories.pct", data.raw);
    write_histories(cfg.out_dir / "histories_cut.pct", data.cut.kept);
    write_volume(cfg.out_dir / "truth.pctv", data.truth);
    return 0;
  });

  const TimedDetections det = detect_all(cfg, data);

  PipelineResult result;
  result.histories_total = data.raw.size();
  result.histories_kept = data.cut.kept.size();
  result.truth = data.truth;
  for (const std::string& algo : cfg.algorithms) {
    const HullMask& mask = det.masks.at(algo);
    run_stage("compare:" + algo, [&] {
      AlgoOutcome row;
      row.name = algo;
      row.comparison = compare_hulls(data.truth, mask);
      row.detect_seconds = det.seconds.at(algo);
      result.rows.push_back(std::move(row));
      return 0;
    });
    run_stage("write:" + algo, [&] {
      write_volume(cfg.out_dir / ("mask_" + algo + ".pctv"), mask);
      if (cfg.export_slices) export_mask_slices(mask, cfg.out_dir / "slices", algo);
      return 0;
    });
    result.masks[algo] = mask;
  }

  run_stage("report", [&] {
    const std::string table =
        comparison_table(result.rows, cfg.recon_grid, result.rows.empty()
                                                          ? 0
                                                          : result.rows[0].comparison.truth_count);
    result.comparison_txt = cfg.out_dir / "comparison.txt";
    write_text(result.comparison_txt, table);

    std::ostringstream tsv;
    tsv << "algorithm\tmissing\textra\ttruth_voxels\n";
    for (const auto& r : result.rows)
      tsv << r.name << "\t" << r.comparison.missing << "\t" << r.comparison.extra << "\t"
          << r.comparison.truth_count << "\n";
    write_text(cfg.out_dir / "comparison.tsv", tsv.str());

    std::ostringstream slices;
    slices << "algorithm\tslice\tmissing\textra\n";
    for (const auto& r : result.rows)
      for (std::size_t iz = 0; iz < r.comparison.missing_by_slice.size(); ++iz)
        slices << r.name << "\t" << iz << "\t" << r.comparison.missing_by_slice[iz] << "\t"
               << r.comparison.extra_by_slice[iz] << "\n";
    write_text(cfg.out_dir / "comparison_slices.tsv", slices.str());

    // wall times live in their own file: they vary run to run, the comparison
    // artifacts must not
    std::ostringstream times;
    times << "algorithm\tdetect_seconds\n";
    for (const auto& r : result.rows)
      times << r.name << "\t" << std::setprecision(6) << std::fixed << r.detect_seconds
            << "\n";
    write_text(cfg.out_dir / "timings.tsv", times.str());
    return 0;
  });
  return result;
}

BenchReport run_benchmark(const PipelineConfig& cfg, int repeats) {
  validate_algorithms(cfg.algorithms);
  if (repeats < 1) throw std::invalid_argument("run_benchmark: repeats must be >= 1");
  PreparedData data = prepare_inputs(cfg);

  BenchReport report;
  report.raw_histories = data.raw.size();
  report.cut_histories = data.cut.kept.size();
  report.grid = cfg.recon_grid;
  report.threads = cfg.threads;
  report.thresholds = cfg.thresholds;

  for (const std::string& algo : cfg.algorithms) {
    BenchRow row;
    row.name = algo;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = Clock::now();
      run_stage("bench:" + algo, [&] {
        if (algo == "sc") {
          sc_detect(data.cut.bins, cfg.recon_grid, cfg.thresholds, cfg.threads);
        } else if (algo == "msc") {
          msc_detect(data.raw, cfg.recon_grid, cfg.thresholds, cfg.threads);
        } else if (algo == "sm") {
          sm_detect(data.raw, cfg.recon_grid, cfg.thresholds, cfg.threads);
        } else {
          const Sinogram sino = build_sinogram(data.cut.bins);
          const RspGrid recon = fbp_reconstruct(sino, cfg.recon_grid, cfg.threads);
          fbp_hull(recon, cfg.thresholds);
        }
        return 0;
      });
      row.runs.push_back(seconds_since(t0));
    }
    std::vector<double> sorted = row.runs;
    std::sort(sorted.begin(), sorted.end());
    row.min_seconds = sorted.front();
    row.median_seconds = sorted[sorted.size() / 2];
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string format_bench_report(const BenchReport& report) {
  std::ostringstream out;
  out << "Detection-stage timings (" << report.raw_histories << " raw / "
      << report.cut_histories << " cut histories, grid " << report.grid.nx << "x"
      << report.grid.ny << "x" << report.grid.nz << ", threads "
      << (report.threads > 0 ? std::to_string(report.threads) : std::string("auto"))
      << ")\n\n";
  out << std::left << std::setw(8) << "algo" << std::right << std::setw(14) << "min [s]"
      << std::setw(14) << "median [s]" << "\n";
  for (const auto& r : report.rows) {
    out << std::left << std::setw(8) << r.name << std::right << std::fixed
        << std::setprecision(4) << std::setw(14) << r.min_seconds << std::setw(14)
        << r.median_seconds << "\n";
  }
  return out.str();
}

}  // namespace pct
