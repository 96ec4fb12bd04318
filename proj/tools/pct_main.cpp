// Command-line front end: simulate | cut | hull | compare | bench | pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "pct/compare.hpp"
#include "pct/config.hpp"
#include "pct/fbp.hpp"
#include "pct/history_io.hpp"
#include "pct/hull_msc.hpp"
#include "pct/hull_sc.hpp"
#include "pct/hull_sm.hpp"
#include "pct/image_io.hpp"
#include "pct/pipeline.hpp"

namespace {

// Exit codes: 0 ok, 2 usage (CLI11), 3 config, 4 I/O, 5 file format,
// 6 invalid data/arguments, 7 internal.
int code_for_current_exception() {
  try {
    throw;
  } catch (const pct::ConfigError&) {
    return 3;
  } catch (const pct::FormatError&) {
    return 5;
  } catch (const pct::IoError&) {
    return 4;
  } catch (const std::invalid_argument&) {
    return 6;
  } catch (const std::domain_error&) {
    return 6;
  } catch (const std::out_of_range&) {
    return 6;
  } catch (const std::exception&) {
    return 7;
  }
}

struct GlobalOptions {
  int threads = 0;
  std::uint64_t seed = 0;
};

// flags named after the AlgorithmThresholds fields
void register_threshold_options(CLI::App* cmd, pct::AlgorithmThresholds& th) {
  cmd->add_option("--wepl_miss_cutoff_mm", th.wepl_miss_cutoff_mm);
  cmd->add_option("--wepl_hit_cutoff_mm", th.wepl_hit_cutoff_mm);
  cmd->add_flag("--angle_cutoffs_enabled", th.angle_cutoffs_enabled);
  cmd->add_option("--angle_miss_cutoff_rad", th.angle_miss_cutoff_rad);
  cmd->add_option("--angle_hit_cutoff_rad", th.angle_hit_cutoff_rad);
  cmd->add_option("--msc_count_diff_threshold", th.msc_count_diff_threshold);
  cmd->add_option("--sc_filter_threshold", th.sc_filter_threshold);
  cmd->add_option("--fbp_rsp_threshold", th.fbp_rsp_threshold);
  cmd->add_option("--sm_gaussian_sigma", th.sm_gaussian_sigma);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proton-CT hull detection toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--threads", global.threads, "worker threads (0 = hardware)");
  auto* seed_opt = app.add_option("--seed", global.seed, "override the RNG seed");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "generate proton histories");
  std::string sim_phantom, sim_config, sim_out = "histories.pct";
  std::string sim_noise;
  simulate->add_option("--phantom", sim_phantom, "phantom spec file")->required();
  simulate->add_option("--config", sim_config, "scan config file")->required();
  simulate->add_option("-o,--output", sim_out, "output history file");
  simulate->add_option("--noise", sim_noise, "override WEPL noise: on|off");

  // cut
  auto* cut = app.add_subcommand("cut", "bin histories and apply data cuts");
  std::string cut_in, cut_out = "histories_cut.pct", cut_config, cut_report;
  cut->add_option("-i,--input", cut_in, "input history file")->required();
  cut->add_option("-o,--output", cut_out, "filtered history file");
  cut->add_option("--config", cut_config, "binning config file");
  cut->add_option("--report", cut_report, "bin statistics report file");

  // hull
  auto* hull = app.add_subcommand("hull", "run one hull-detection algorithm");
  std::string hull_algo, hull_in, hull_out = "mask.pctv", hull_config, hull_slices;
  hull->add_option("--algo", hull_algo, "fbp|sc|msc|sm")->required();
  hull->add_option("-i,--input", hull_in, "input history file")->required();
  hull->add_option("--config", hull_config, "config with recon grid and binning")
      ->required();
  hull->add_option("-o,--output", hull_out, "output mask file");
  hull->add_option("--slices-dir", hull_slices, "write per-slice PGM images here");
  pct::AlgorithmThresholds hull_th;
  register_threshold_options(hull, hull_th);

  // compare
  auto* compare = app.add_subcommand("compare", "count missing/extra voxels");
  std::string cmp_truth, cmp_approx, cmp_out;
  compare->add_option("--truth", cmp_truth, "reference mask file")->required();
  compare->add_option("--approx", cmp_approx, "detected mask file")->required();
  compare->add_option("-o,--output", cmp_out, "write the report here (else stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "time the detection stages");
  std::string bench_config, bench_out;
  int bench_repeats = 3;
  bench->add_option("--config", bench_config, "pipeline config file")->required();
  bench->add_option("-o,--output", bench_out, "write the report here (else stdout)");
  bench->add_option("--repeats", bench_repeats, "timing repetitions");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "simulate, cut, detect, compare");
  std::string pipe_config, pipe_out = "out";
  pipeline->add_option("--config", pipe_config, "pipeline config file")->required();
  pipeline->add_option("--out", pipe_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const pct::PhantomSpec spec = pct::load_phantom_spec(sim_phantom);
      pct::ScanConfig cfg =
          pct::scan_from_keyvalues(pct::KeyValueFile::parse_file(sim_config));
      if (seed_opt->count() > 0) cfg.seed = global.seed;
      if (sim_noise == "on")
        cfg.noise_enabled = true;
      else if (sim_noise == "off")
        cfg.noise_enabled = false;
      else if (!sim_noise.empty())
        throw std::invalid_argument("--noise expects on|off");
      std::vector<std::string> warnings;
      const pct::RspGrid phantom = pct::rasterize_phantom(spec, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      const auto histories = pct::generate_histories(phantom, cfg, global.threads);
      pct::write_histories(sim_out, histories);
      std::cout << "wrote " << histories.size() << " histories to " << sim_out << "\n";
    } else if (*cut) {
      pct::BinningConfig cfg;
      if (!cut_config.empty())
        cfg = pct::binning_from_keyvalues(pct::KeyValueFile::parse_file(cut_config));
      const auto histories = pct::read_histories(cut_in);
      const pct::BinGrid bins = pct::bin_histories(histories, cfg);
      const pct::CutResult result = pct::apply_data_cuts(histories, bins);
      pct::write_histories(cut_out, result.kept);
      std::ostringstream report;
      report << "histories_in\t" << histories.size() << "\n"
             << "histories_removed\t" << result.removed << "\n"
             << "histories_kept\t" << result.kept.size() << "\n"
             << "occupied_bins\t" << result.bins.size() << "\n";
      report << "\nbin\tangle_deg\tlateral_mm\tvertical_mm\tcount\tmean_wepl\tstd_wepl\n";
      for (const auto& [key, bin] : result.bins.bins()) {
        report << key.ia << "," << key.il << "," << key.iv << "\t"
               << bin.stats.mean_angle_deg << "\t" << result.bins.lateral_center(key)
               << "\t" << result.bins.vertical_center(key) << "\t" << bin.stats.count
               << "\t" << bin.stats.mean_wepl << "\t" << bin.stats.std_wepl << "\n";
      }
      if (cut_report.empty()) {
        std::cout << report.str();
      } else {
        std::ofstream out(cut_report, std::ios::binary);
        if (!out) throw pct::IoError("cannot open '" + cut_report + "'");
        out << report.str();
        std::cout << "kept " << result.kept.size() << " of " << histories.size()
                  << " histories; report in " << cut_report << "\n";
      }
    } else if (*hull) {
      const pct::KeyValueFile kv = pct::KeyValueFile::parse_file(hull_config);
      const pct::GridSpec grid = pct::grid_from_keyvalues(kv, "recon.");
      const pct::BinningConfig bin_cfg = pct::binning_from_keyvalues(kv, "binning.");
      const auto histories = pct::read_histories(hull_in);
      pct::HullMask mask;
      if (hull_algo == "sc" || hull_algo == "fbp") {
        const pct::BinGrid bins = pct::bin_histories(histories, bin_cfg);
        const pct::CutResult cutres = pct::apply_data_cuts(histories, bins);
        if (hull_algo == "sc") {
          const auto det = pct::sc_detect(cutres.bins, grid, hull_th, global.threads);
          if (det.empty_input)
            std::cerr << "warning: no occupied bins, nothing carved\n";
          mask = det.hull;
        } else {
          const pct::Sinogram sino = pct::build_sinogram(cutres.bins);
          if (sino.empty_bins > 0)
            std::cerr << "warning: " << sino.empty_bins
                      << " sinogram bins had no contributing history\n";
          mask = pct::fbp_hull(pct::fbp_reconstruct(sino, grid, global.threads), hull_th);
        }
      } else if (hull_algo == "msc") {
        mask = pct::msc_detect(histories, grid, hull_th, global.threads).hull;
      } else if (hull_algo == "sm") {
        const auto det = pct::sm_detect(histories, grid, hull_th, global.threads);
        for (int iz : det.empty_slices)
          std::cerr << "note: slice " << iz << " has no hit path, empty hull there\n";
        mask = det.hull;
      } else {
        throw std::invalid_argument("--algo must be one of fbp|sc|msc|sm");
      }
      pct::write_volume(hull_out, mask);
      if (!hull_slices.empty()) {
        std::filesystem::create_directories(hull_slices);
        for (int iz = 0; iz < mask.grid().nz; ++iz) {
          std::ostringstream name;
          name << hull_algo << "_z" << iz << ".pgm";
          pct::export_slice_image(mask.slice(iz).cast<double>(),
                                  std::filesystem::path(hull_slices) / name.str(),
                                  pct::ImageNormalization{1.0});
        }
      }
      std::cout << "wrote mask to " << hull_out << "\n";
    } else if (*compare) {
      const pct::HullMask truth = pct::read_mask(cmp_truth);
      const pct::HullMask approx = pct::read_mask(cmp_approx);
      const pct::HullComparison cmp = pct::compare_hulls(truth, approx);
      std::ostringstream out;
      out << "truth_voxels\t" << cmp.truth_count << "\n"
          << "missing\t" << cmp.missing << "\n"
          << "extra\t" << cmp.extra << "\n";
      for (std::size_t iz = 0; iz < cmp.missing_by_slice.size(); ++iz)
        out << "slice_" << iz << "\t" << cmp.missing_by_slice[iz] << "\t"
            << cmp.extra_by_slice[iz] << "\n";
      if (cmp_out.empty()) {
        std::cout << out.str();
      } else {
        std::ofstream f(cmp_out, std::ios::binary);
        if (!f) throw pct::IoError("cannot open '" + cmp_out + "'");
        f << out.str();
      }
    } else if (*bench) {
      pct::PipelineConfig cfg = pct::load_pipeline_config(bench_config);
      cfg.threads = global.threads;
      if (seed_opt->count() > 0) cfg.scan.seed = global.seed;
      const pct::BenchReport report = pct::run_benchmark(cfg, bench_repeats);
      const std::string text = pct::format_bench_report(report);
      if (bench_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(bench_out, std::ios::binary);
        if (!f) throw pct::IoError("cannot open '" + bench_out + "'");
        f << text;
        std::cout << "bench report in " << bench_out << "\n";
      }
    } else if (*pipeline) {
      pct::PipelineConfig cfg = pct::load_pipeline_config(pipe_config);
      cfg.out_dir = pipe_out;
      cfg.threads = global.threads;
      if (seed_opt->count() > 0) cfg.scan.seed = global.seed;
      const pct::PipelineResult result = pct::run_pipeline(cfg);
      std::cout << "histories: " << result.histories_total << " raw, "
                << result.histories_kept << " after cuts\n\n";
      std::ifstream table(result.comparison_txt);
      std::cout << table.rdbuf() << "\n";
      std::cout << "detection times:\n";
      for (const auto& r : result.rows)
        std::cout << "  " << r.name << "\t" << r.detect_seconds << " s\n";
      std::cout << "artifacts in " << cfg.out_dir << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code_for_current_exception();
  }
  return 0;
}
