#pragma once

#include <vector>

#include "pct/binning.hpp"
#include "pct/grid.hpp"
#include "pct/thresholds.hpp"

namespace pct {

/// Mean-WEPL projections: one (lateral x vertical) array per view. Bin
/// centers sit at (index + first + 0.5) * bin width on each axis.
struct Sinogram {
  std::vector<double> angles_deg;          // ascending, one per view
  std::vector<Eigen::ArrayXXd> views;      // each n_lateral x n_vertical
  double lateral_bin_mm = 1.0;
  double vertical_bin_mm = 5.0;
  int lateral_first = 0;
  int vertical_first = 0;
  std::size_t empty_bins = 0;  // positions with no contributing history

  int n_lateral() const { return views.empty() ? 0 : static_cast<int>(views[0].rows()); }
  int n_vertical() const { return views.empty() ? 0 : static_cast<int>(views[0].cols()); }
  double lateral_center(int j) const {
    return (lateral_first + j + 0.5) * lateral_bin_mm;
  }
  double vertical_center(int k) const {
    return (vertical_first + k + 0.5) * vertical_bin_mm;
  }
};

/// Arranges per-bin mean WEPL values into per-view arrays. Unoccupied
/// positions stay zero and are tallied in empty_bins.
Sinogram build_sinogram(const BinGrid& bins);

/// Discrete convolution with the Shepp-Logan kernel
/// h(n) = -2 / (pi^2 tau^2 (4n^2 - 1)), truncated at the profile length.
Eigen::ArrayXd shepp_logan_filter(const Eigen::Ref<const Eigen::ArrayXd>& profile,
                                  double bin_width_mm);

/// Per-slice parallel-beam filtered backprojection over full-circle data.
/// Each view's lateral profile (vertically interpolated to the slice center)
/// is filtered and backprojected with linear interpolation; the angular sum is
/// scaled by (angular spacing in radians) / 2 because a 360-degree scan covers
/// every line twice. Throws if more than one view of angular coverage is
/// missing.
RspGrid fbp_reconstruct(const Sinogram& sino, const GridSpec& grid, int threads = 0);

/// Threshold hull: voxels with reconstructed RSP >= fbp_rsp_threshold.
HullMask fbp_hull(const RspGrid& recon, const AlgorithmThresholds& th);

}  // namespace pct
