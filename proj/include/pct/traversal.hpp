#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "pct/grid.hpp"

namespace pct {

/// Floor mapping of a physical point to its voxel. Points on the max boundary
/// of any axis map outside (returns std::nullopt).
inline std::optional<VoxelIndex> point_to_voxel(const Eigen::Vector3d& p,
                                                const GridSpec& grid) {
  int idx[3];
  for (int a = 0; a < 3; ++a) {
    const double u = (p[a] - grid.origin[a]) / grid.size(a);
    int i = static_cast<int>(std::floor(u));
    // repair possible 1-ulp drift of the division against exact plane coordinates
    if (p[a] < grid.edge(a, i)) --i;
    else if (p[a] >= grid.edge(a, i + 1)) ++i;
    if (i < 0 || i >= grid.count(a)) return std::nullopt;
    idx[a] = i;
  }
  return VoxelIndex{idx[0], idx[1], idx[2]};
}

/// Walks the segment `line` through `grid` and invokes `fn(VoxelIndex)` for
/// every voxel whose closed axis-aligned box the segment intersects, ordered
/// from entry to exit; each voxel is reported once.
///
/// Boundary semantics: boxes are closed, so a segment that only touches a
/// voxel at a shared face, edge or corner still reports that voxel. This is
/// what makes the traversal match a closed-box intersection oracle exactly and
/// keeps carving/counting algorithms over-inclusive rather than lossy.
template <typename Fn>
void for_each_voxel_on_line(const LinePath& line, const GridSpec& grid, Fn&& fn) {
  const Eigen::Vector3d e = line.entry();
  const Eigen::Vector3d d = line.delta();

  // Clip the segment parameter range to the closed grid box.
  double t0 = 0.0, t1 = 1.0;
  for (int a = 0; a < 3; ++a) {
    const double lo = grid.edge(a, 0);
    const double hi = grid.edge(a, grid.count(a));
    if (d[a] == 0.0) {
      if (e[a] < lo || e[a] > hi) return;
    } else {
      double ta = (lo - e[a]) / d[a];
      double tb = (hi - e[a]) / d[a];
      if (ta > tb) std::swap(ta, tb);
      if (ta > t0) t0 = ta;
      if (tb < t1) t1 = tb;
    }
  }
  if (t0 > t1) return;

  // Index candidates of coordinate x on a fixed axis; two candidates when x
  // lies exactly on an interior boundary plane.
  auto fixed_candidates = [&](int a, double x, int out[2]) -> int {
    const double u = (x - grid.origin[a]) / grid.size(a);
    int i = static_cast<int>(std::floor(u));
    if (x < grid.edge(a, i)) --i;
    else if (x >= grid.edge(a, i + 1)) ++i;
    int cnt = 0;
    if (x == grid.edge(a, i)) {
      if (i - 1 >= 0 && i - 1 < grid.count(a)) out[cnt++] = i - 1;
      if (i >= 0 && i < grid.count(a)) out[cnt++] = i;
    } else if (i >= 0 && i < grid.count(a)) {
      out[cnt++] = i;
    }
    return cnt;
  };

  bool moving[3];
  int fixed_idx[3][2];
  int fixed_cnt[3] = {1, 1, 1};
  int cur[3] = {0, 0, 0};
  int stepdir[3] = {0, 0, 0};
  double inv_d[3] = {0.0, 0.0, 0.0};
  double tmax[3] = {std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};

  // Emits `base` combined with every fixed-axis candidate, bounds permitting.
  auto emit = [&](const int base[3]) {
    int vals[3][2];
    int cnt[3];
    for (int a = 0; a < 3; ++a) {
      if (moving[a]) {
        if (base[a] < 0 || base[a] >= grid.count(a)) return;
        vals[a][0] = base[a];
        cnt[a] = 1;
      } else {
        vals[a][0] = fixed_idx[a][0];
        vals[a][1] = fixed_idx[a][1];
        cnt[a] = fixed_cnt[a];
      }
    }
    for (int i0 = 0; i0 < cnt[0]; ++i0)
      for (int i1 = 0; i1 < cnt[1]; ++i1)
        for (int i2 = 0; i2 < cnt[2]; ++i2)
          fn(VoxelIndex{vals[0][i0], vals[1][i1], vals[2][i2]});
  };

  // Initial voxel set at the (clipped) start point. A start point lying
  // exactly on a boundary plane touches the voxel behind that plane too.
  int entry_behind[3];
  bool has_behind[3] = {false, false, false};
  for (int a = 0; a < 3; ++a) {
    moving[a] = d[a] != 0.0;
    if (!moving[a]) {
      fixed_cnt[a] = fixed_candidates(a, e[a], fixed_idx[a]);
      if (fixed_cnt[a] == 0) return;
      continue;
    }
    inv_d[a] = 1.0 / d[a];
    stepdir[a] = d[a] > 0.0 ? 1 : -1;
    const double x = e[a] + t0 * d[a];
    const double u = (x - grid.origin[a]) / grid.size(a);
    int i = static_cast<int>(std::floor(u));
    if (x < grid.edge(a, i)) --i;
    else if (x >= grid.edge(a, i + 1)) ++i;
    int entering = i;
    int behind = i;  // meaningful only when on a plane
    const bool on_plane = x == grid.edge(a, i);
    if (on_plane) {
      entering = d[a] > 0.0 ? i : i - 1;
      behind = d[a] > 0.0 ? i - 1 : i;
    }
    // The clip established overlap with the grid box, so an out-of-range
    // entering index is roundoff (or a border point touch); pull it in.
    if (entering < 0) entering = 0;
    else if (entering >= grid.count(a)) entering = grid.count(a) - 1;
    cur[a] = entering;
    if (on_plane && behind != entering && behind >= 0 && behind < grid.count(a)) {
      entry_behind[a] = behind;
      has_behind[a] = true;
    }
  }

  // Emit every voxel containing the start point (current voxel plus the
  // behind-plane combinations).
  {
    int n_behind = 0;
    int behind_axes[3];
    for (int a = 0; a < 3; ++a)
      if (has_behind[a]) behind_axes[n_behind++] = a;
    const int combos = 1 << n_behind;
    for (int m = 0; m < combos; ++m) {
      int base[3] = {cur[0], cur[1], cur[2]};
      for (int k = 0; k < n_behind; ++k)
        if (m & (1 << k)) base[behind_axes[k]] = entry_behind[behind_axes[k]];
      emit(base);
    }
  }

  for (int a = 0; a < 3; ++a) {
    if (!moving[a]) continue;
    const int j = cur[a] + (stepdir[a] > 0 ? 1 : 0);
    tmax[a] = (grid.edge(a, j) - e[a]) * inv_d[a];
  }

  while (true) {
    double tnext = tmax[0];
    if (tmax[1] < tnext) tnext = tmax[1];
    if (tmax[2] < tnext) tnext = tmax[2];
    if (tnext > t1) return;  // segment ends strictly inside the current voxel

    int tied[3];
    int n_tied = 0;
    for (int a = 0; a < 3; ++a)
      if (moving[a] && tmax[a] == tnext) tied[n_tied++] = a;

    const bool at_end = tnext == t1;
    // Crossing through a shared edge/corner touches every box combination of
    // the tied axes; report them before moving on diagonally.
    const int full = (1 << n_tied) - 1;
    for (int m = 1; m <= full; ++m) {
      if (!at_end && m == full) continue;  // the full step becomes the next current voxel
      int base[3] = {cur[0], cur[1], cur[2]};
      for (int k = 0; k < n_tied; ++k)
        if (m & (1 << k)) base[tied[k]] += stepdir[tied[k]];
      emit(base);
    }
    if (at_end) return;

    for (int k = 0; k < n_tied; ++k) {
      const int a = tied[k];
      cur[a] += stepdir[a];
      if (cur[a] < 0 || cur[a] >= grid.count(a)) return;
      const int j = cur[a] + (stepdir[a] > 0 ? 1 : 0);
      tmax[a] = (grid.edge(a, j) - e[a]) * inv_d[a];
    }
    emit(cur);
  }
}

/// Ordered list of voxels intersected by the segment (entry to exit).
inline std::vector<VoxelIndex> voxels_along_line(const LinePath& line,
                                                 const GridSpec& grid) {
  std::vector<VoxelIndex> out;
  for_each_voxel_on_line(line, grid, [&](const VoxelIndex& v) { out.push_back(v); });
  return out;
}

}  // namespace pct
