#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pct/grid.hpp"
#include "pct/history.hpp"
#include "pct/thresholds.hpp"

namespace pct {

/// Strongest edge chain of a 2D count image, found with the Canny core:
/// Gaussian smoothing, Sobel gradients, non-maximum suppression and
/// double-threshold hysteresis, followed by 8-connected chaining. The chain
/// with the largest mean gradient magnitude wins; ties go to the chain whose
/// sampled count maximum is smaller.
struct EdgeChain {
  std::vector<std::pair<int, int>> pixels;  // (ix, iy)
  double mean_gradient = 0.0;
  double threshold = 0.0;  // max of the raw counts sampled along the chain
};

EdgeChain sm_strongest_edge(const Eigen::Ref<const Eigen::ArrayXXd>& counts,
                            double gaussian_sigma);

/// Per-slice threshold: the largest raw count sampled along the strongest
/// edge chain. Throws std::domain_error("no edge") on an all-zero slice.
double sm_threshold_for_slice(const Eigen::Ref<const Eigen::ArrayXXd>& counts,
                              double gaussian_sigma);

struct SmDetection {
  HullMask hull;
  CountVolume counts;  // per-voxel number of hit-classified paths
  std::vector<double> slice_thresholds;
  std::vector<int> empty_slices;  // slices with no hit path at all
  std::size_t hit_histories = 0;
};

/// Space modeling over raw histories: counts per-voxel traversals of
/// hit-classified protons, picks a per-slice threshold from the strongest
/// count edge, and keeps voxels whose count strictly exceeds it.
SmDetection sm_detect(std::span<const ProtonHistory> histories, const GridSpec& grid,
                      const AlgorithmThresholds& th, int threads = 0);

}  // namespace pct
