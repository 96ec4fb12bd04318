#pragma once

#include <span>

#include "pct/grid.hpp"
#include "pct/history.hpp"
#include "pct/thresholds.hpp"

namespace pct {

struct MscDetection {
  HullMask hull;
  CountVolume counts;  // per-voxel number of miss-classified paths
  std::size_t missed_histories = 0;
};

/// Exclusion rule on an existing count volume: a voxel leaves the hull when
/// its count exceeds any in-slice 4-neighbor's count by at least the
/// difference threshold. Differences only, so a constant offset on all counts
/// changes nothing.
HullMask msc_hull_from_counts(const CountVolume& counts, int count_diff_threshold);

/// Modified space carving over raw (uncut, unbinned) histories: counts how
/// often each voxel lies on the straight path of a miss-classified proton,
/// then excludes voxels by neighbor count differences.
MscDetection msc_detect(std::span<const ProtonHistory> histories, const GridSpec& grid,
                        const AlgorithmThresholds& th, int threads = 0);

}  // namespace pct
