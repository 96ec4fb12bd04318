#include "pct/hull_msc.hpp"

#include "pct/detail/count_paths.hpp"

namespace pct {

HullMask msc_hull_from_counts(const CountVolume& counts, int count_diff_threshold) {
  const GridSpec& g = counts.grid();
  HullMask mask(g, 1);
  const std::int64_t nt = count_diff_threshold;
  for (int iz = 0; iz < g.nz; ++iz) {
    auto c = counts.slice(iz);
    auto m = mask.slice(iz);
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        const std::int64_t n_v = c(ix, iy);
        const bool excluded =
            (ix > 0 && n_v - c(ix - 1, iy) >= nt) ||
            (ix + 1 < g.nx && n_v - c(ix + 1, iy) >= nt) ||
            (iy > 0 && n_v - c(ix, iy - 1) >= nt) ||
            (iy + 1 < g.ny && n_v - c(ix, iy + 1) >= nt);
        if (excluded) m(ix, iy) = 0;
      }
  }
  return mask;
}

MscDetection msc_detect(std::span<const ProtonHistory> histories, const GridSpec& grid,
                        const AlgorithmThresholds& th, int threads) {
  th.validate();
  grid.validate();
  MscDetection det{HullMask(grid, 1), CountVolume(grid, 0), 0};
  det.missed_histories = detail::count_paths(
      histories, grid, det.counts,
      [&](const ProtonHistory& h) {
        return th.classifies_missed(h.wepl, rel_horizontal_angle(h),
                                    rel_vertical_angle(h));
      },
      threads);
  det.hull = msc_hull_from_counts(det.counts, th.msc_count_diff_threshold);
  return det;
}

}  // namespace pct
