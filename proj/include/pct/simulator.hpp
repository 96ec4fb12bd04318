#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pct/grid.hpp"
#include "pct/history.hpp"
#include "pct/traversal.hpp"

namespace pct {

/// Bivariate-normal exit perturbation applied to protons that cross the
/// object: displacement (mm) and direction angle (rad), correlated.
struct ScatterParams {
  double sigma_displacement_mm = 0.1;
  double sigma_angle_rad = 0.002;
  double correlation = 0.5;

  void validate() const {
    if (sigma_displacement_mm < 0.0 || sigma_angle_rad < 0.0)
      throw std::invalid_argument("ScatterParams: sigmas must be >= 0");
    if (correlation < -1.0 || correlation > 1.0)
      throw std::invalid_argument("ScatterParams: correlation must be in [-1, 1]");
  }
};

/// Gaussian WEPL perturbation with sigma affine in the path length:
/// sigma(w) = sigma_base + sigma_slope * w.
struct NoiseParams {
  double sigma_base_mm = 0.0;
  double sigma_slope = 0.0;

  void validate() const {
    if (sigma_base_mm < 0.0 || sigma_slope < 0.0)
      throw std::invalid_argument("NoiseParams: sigmas must be >= 0");
  }
};

struct ScanConfig {
  int num_projections = 90;
  double angular_step_deg = 4.0;
  int protons_per_projection = 0;
  std::string beam_label = "200 MeV";

  double fov_lateral_mm = 300.0;   // lateral sampling width, centered on the axis
  double vertical_min_mm = -12.0;  // sampling band in z
  double vertical_max_mm = 12.0;
  double scan_radius_mm = 150.0;  // distance of entry/exit planes from isocenter

  ScatterParams scatter;
  NoiseParams noise;
  bool noise_enabled = false;

  std::uint64_t seed = 1;

  void validate() const {
    if (num_projections < 1) throw std::invalid_argument("ScanConfig: no projections");
    if (protons_per_projection < 0)
      throw std::invalid_argument("ScanConfig: negative proton count");
    const double span = num_projections * angular_step_deg;
    if (std::abs(span - 360.0) > 1e-9)
      throw std::invalid_argument(
          "ScanConfig: num_projections x angular_step must cover 360 degrees");
    if (!(fov_lateral_mm > 0.0)) throw std::invalid_argument("ScanConfig: bad lateral FOV");
    if (!(vertical_max_mm > vertical_min_mm))
      throw std::invalid_argument("ScanConfig: empty vertical band");
    if (!(scan_radius_mm > 0.0)) throw std::invalid_argument("ScanConfig: bad scan radius");
    scatter.validate();
    noise.validate();
  }

  std::size_t total_histories() const {
    return static_cast<std::size_t>(num_projections) *
           static_cast<std::size_t>(protons_per_projection);
  }
};

/// Discrete WEPL of a straight chord: the sum of the RSP of every traversed
/// voxel times the grid's (isotropic) voxel size, i.e. every traversed voxel
/// contributes one fixed-length step regardless of its chord length.
double integrate_wepl(const LinePath& line, const RspGrid& rsp);

/// max(0, wepl + N(0, sigma_base + sigma_slope * wepl))
double apply_wepl_noise(double wepl, const NoiseParams& params, std::mt19937_64& rng);

/// Generates protons for every projection of a full rotation. Parallel rays
/// per projection; exit displacement/angle perturbed by the scatter model only
/// for protons whose straight chord crosses the object's bounding box. Each
/// projection draws from its own seed-derived RNG stream, so the output is
/// identical for any thread count.
std::vector<ProtonHistory> generate_histories(const RspGrid& phantom,
                                              const ScanConfig& cfg, int threads = 0);

}  // namespace pct
