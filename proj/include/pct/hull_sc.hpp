#pragma once

#include "pct/binning.hpp"
#include "pct/grid.hpp"
#include "pct/thresholds.hpp"

namespace pct {

struct ScDetection {
  HullMask hull;
  HullMask carved;  // state before the 5x5 mean and re-binarization
  std::size_t missed_bins = 0;
  bool empty_input = false;
};

/// Silhouette/space carving. Starts from an all-ones volume, zeroes the voxels
/// along the center path of every bin whose mean WEPL classifies as a miss,
/// then smooths each slice with the 5x5 mean and re-binarizes above the filter
/// threshold. An empty BinGrid returns the untouched all-ones volume with
/// empty_input set.
ScDetection sc_detect(const BinGrid& bins, const GridSpec& grid,
                      const AlgorithmThresholds& th, int threads = 0);

}  // namespace pct
