#pragma once

#include <span>
#include <vector>

#include "pct/grid.hpp"
#include "pct/history.hpp"
#include "pct/traversal.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pct::detail {

inline int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

/// Accumulates per-voxel straight-path counts for every history accepted by
/// `select`. Per-thread volumes merged in fixed order; integer sums make the
/// result identical for any thread count. Returns the number of selected
/// histories.
template <typename Select>
std::size_t count_paths(std::span<const ProtonHistory> histories, const GridSpec& grid,
                        CountVolume& counts, Select&& select, int threads) {
  const int n_threads = resolve_threads(threads);
  std::vector<CountVolume> partial(static_cast<std::size_t>(n_threads),
                                   CountVolume(grid, 0));
  std::vector<std::size_t> selected(static_cast<std::size_t>(n_threads), 0);

#ifdef _OPENMP
#pragma omp parallel num_threads(n_threads)
  {
    const int tid = omp_get_thread_num();
    CountVolume& local = partial[static_cast<std::size_t>(tid)];
    std::size_t picked = 0;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(histories.size()); ++i) {
      const ProtonHistory& h = histories[static_cast<std::size_t>(i)];
      if (!select(h)) continue;
      ++picked;
      const Eigen::Vector3d a = h.entry_point();
      const Eigen::Vector3d b = h.exit_point();
      if (a == b) continue;
      for_each_voxel_on_line(LinePath(a, b), grid,
                             [&](const VoxelIndex& v) { ++local[v]; });
    }
    selected[static_cast<std::size_t>(tid)] = picked;
  }
#else
  {
    CountVolume& local = partial[0];
    std::size_t picked = 0;
    for (const ProtonHistory& h : histories) {
      if (!select(h)) continue;
      ++picked;
      const Eigen::Vector3d a = h.entry_point();
      const Eigen::Vector3d b = h.exit_point();
      if (a == b) continue;
      for_each_voxel_on_line(LinePath(a, b), grid,
                             [&](const VoxelIndex& v) { ++local[v]; });
    }
    selected[0] = picked;
  }
#endif

  counts = CountVolume(grid, 0);
  std::uint32_t* dst = counts.data();
  for (const CountVolume& part : partial) {
    const std::uint32_t* src = part.data();
    for (std::size_t i = 0; i < counts.size(); ++i) dst[i] += src[i];
  }
  std::size_t total = 0;
  for (std::size_t s : selected) total += s;
  return total;
}

}  // namespace pct::detail
