#pragma once

// Brute-force reference implementations used by tests only. These must stay
// independent of the library's traversal/filter code paths they check.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "pct/grid.hpp"

namespace pct::testing {

/// Closed-box segment intersection test, evaluated per voxel over the whole
/// grid. Parameter intervals are compared inclusively so touching at a face,
/// edge or corner counts as an intersection.
inline bool segment_intersects_box(const Eigen::Vector3d& e, const Eigen::Vector3d& d,
                                   const GridSpec& grid, const VoxelIndex& v) {
  double t0 = 0.0, t1 = 1.0;
  const int idx[3] = {v.ix, v.iy, v.iz};
  for (int a = 0; a < 3; ++a) {
    const double lo = grid.edge(a, idx[a]);
    const double hi = grid.edge(a, idx[a] + 1);
    if (d[a] == 0.0) {
      if (e[a] < lo || e[a] > hi) return false;
    } else {
      double ta = (lo - e[a]) / d[a];
      double tb = (hi - e[a]) / d[a];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
    }
  }
  return t0 <= t1;
}

inline std::vector<VoxelIndex> brute_force_voxels(const LinePath& line,
                                                  const GridSpec& grid) {
  std::vector<VoxelIndex> out;
  const Eigen::Vector3d e = line.entry();
  const Eigen::Vector3d d = line.delta();
  for (int iz = 0; iz < grid.nz; ++iz)
    for (int iy = 0; iy < grid.ny; ++iy)
      for (int ix = 0; ix < grid.nx; ++ix) {
        const VoxelIndex v{ix, iy, iz};
        if (segment_intersects_box(e, d, grid, v)) out.push_back(v);
      }
  return out;
}

}  // namespace pct::testing
