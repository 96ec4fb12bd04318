#pragma once

#include <cstdint>
#include <vector>

#include "pct/grid.hpp"

namespace pct {

/// Voxel-by-voxel difference between a reference hull H and an approximation
/// H': `missing` counts voxels of H absent from H', `extra` counts voxels of
/// H' outside H.
struct HullComparison {
  std::uint64_t missing = 0;
  std::uint64_t extra = 0;
  std::uint64_t truth_count = 0;  // |H|
  std::vector<std::uint64_t> missing_by_slice;
  std::vector<std::uint64_t> extra_by_slice;
};

/// Throws std::invalid_argument when the two masks live on different grids.
HullComparison compare_hulls(const HullMask& truth, const HullMask& approx);

}  // namespace pct
