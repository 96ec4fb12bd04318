#include "pct/hull_sc.hpp"

#include <vector>

#include "pct/filters.hpp"
#include "pct/traversal.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pct {

ScDetection sc_detect(const BinGrid& bins, const GridSpec& grid,
                      const AlgorithmThresholds& th, int threads) {
  th.validate();
  grid.validate();
  ScDetection det{HullMask(grid, 1), HullMask(grid, 1), 0, false};
  if (bins.empty()) {
    det.empty_input = true;
    return det;
  }

  // A bin's straight path lies at its vertical center; carve it into the
  // slice whose center falls inside the bin's vertical interval. Collect the
  // miss paths per slice so slices can be carved independently.
  const double half_len = grid.extent().head<2>().norm();
  std::vector<std::vector<const BinKey*>> per_slice(grid.nz);
  for (const auto& [key, bin] : bins.bins()) {
    const BinStats& s = bin.stats;
    if (!th.classifies_missed(s.mean_wepl, s.mean_rel_h, s.mean_rel_v)) continue;
    ++det.missed_bins;
    for (int iz = 0; iz < grid.nz; ++iz) {
      const double zc = grid.edge(2, iz) + 0.5 * grid.slice_thickness;
      if (zc >= bins.vertical_low(key) && zc < bins.vertical_high(key))
        per_slice[iz].push_back(&key);
    }
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif

#pragma omp parallel for schedule(dynamic)
  for (int iz = 0; iz < grid.nz; ++iz) {
    const double zc = grid.edge(2, iz) + 0.5 * grid.slice_thickness;
    for (const BinKey* key : per_slice[iz]) {
      LinePath path = bins.center_path(*key, half_len);
      // shift the path into this slice's plane
      const Eigen::Vector3d dz(0, 0, zc - bins.vertical_center(*key));
      const LinePath in_slice(path.entry() + dz, path.exit() + dz);
      for_each_voxel_on_line(in_slice, grid, [&](const VoxelIndex& v) {
        det.carved[v] = 0;
      });
    }
    auto carved_slice = det.carved.slice(iz);
    const ArrayXXd smoothed = average_filter_5x5(carved_slice.cast<double>());
    auto hull_slice = det.hull.slice(iz);
    hull_slice = (smoothed > th.sc_filter_threshold).cast<std::uint8_t>();
  }
  return det;
}

}  // namespace pct
