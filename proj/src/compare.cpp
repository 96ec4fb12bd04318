#include "pct/compare.hpp"

#include <stdexcept>

namespace pct {

HullComparison compare_hulls(const HullMask& truth, const HullMask& approx) {
  if (!truth.grid().same_geometry(approx.grid()))
    throw std::invalid_argument("compare_hulls: masks live on different grids");

  const GridSpec& g = truth.grid();
  HullComparison cmp;
  cmp.missing_by_slice.assign(static_cast<std::size_t>(g.nz), 0);
  cmp.extra_by_slice.assign(static_cast<std::size_t>(g.nz), 0);
  for (int iz = 0; iz < g.nz; ++iz) {
    auto t = truth.slice(iz);
    auto a = approx.slice(iz);
    const auto in_truth = t != 0;
    const auto in_approx = a != 0;
    const std::uint64_t missing =
        static_cast<std::uint64_t>((in_truth && !in_approx).count());
    const std::uint64_t extra =
        static_cast<std::uint64_t>((!in_truth && in_approx).count());
    cmp.missing_by_slice[static_cast<std::size_t>(iz)] = missing;
    cmp.extra_by_slice[static_cast<std::size_t>(iz)] = extra;
    cmp.missing += missing;
    cmp.extra += extra;
    cmp.truth_count += static_cast<std::uint64_t>(in_truth.count());
  }
  return cmp;
}

}  // namespace pct
