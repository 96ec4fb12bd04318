#include "pct/phantom.hpp"

#include <algorithm>
#include <cmath>

namespace pct {

namespace {

// Conservative axis-aligned bounding box of a rotated ellipse.
struct Bounds {
  double x_min, x_max, y_min, y_max;
};

Bounds region_bounds(const EllipseRegion& r) {
  const double c = std::cos(r.rotation);
  const double s = std::sin(r.rotation);
  const double rx = std::sqrt(r.semi_axis_a * r.semi_axis_a * c * c +
                              r.semi_axis_b * r.semi_axis_b * s * s);
  const double ry = std::sqrt(r.semi_axis_a * r.semi_axis_a * s * s +
                              r.semi_axis_b * r.semi_axis_b * c * c);
  return {r.center.x() - rx, r.center.x() + rx, r.center.y() - ry, r.center.y() + ry};
}

}  // namespace

RspGrid rasterize_onto(const PhantomSpec& spec, const GridSpec& target,
                       std::vector<std::string>* warnings) {
  spec.grid.validate();
  target.validate();
  RspGrid out(target, 0.0);

  // Paint in ascending priority so higher priority overwrites lower.
  std::vector<const EllipseRegion*> order;
  order.reserve(spec.regions.size());
  for (const auto& r : spec.regions) {
    r.validate();
    order.push_back(&r);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const EllipseRegion* a, const EllipseRegion* b) {
                     return a->priority < b->priority;
                   });

  std::size_t region_no = 0;
  for (const EllipseRegion* rp : order) {
    const EllipseRegion& r = *rp;
    ++region_no;

    // Slice interval on the owning grid, carried to the target through mm.
    const double z_lo = spec.grid.edge(2, r.z_first);
    const double z_hi = spec.grid.edge(2, r.z_last + 1);

    const Bounds b = region_bounds(r);
    if (warnings) {
      const auto lo = target.origin;
      const auto hi = target.max_corner();
      if (b.x_min < lo.x() || b.x_max > hi.x() || b.y_min < lo.y() || b.y_max > hi.y() ||
          z_lo < lo.z() || z_hi > hi.z()) {
        warnings->push_back("phantom region " + std::to_string(region_no) +
                            " extends outside the grid and was clipped");
      }
    }

    // Voxel center index windows covering the region bounds.
    auto clamp_idx = [](int v, int n) { return std::clamp(v, 0, n - 1); };
    const int ix0 = clamp_idx(
        static_cast<int>(std::floor((b.x_min - target.origin.x()) / target.voxel_size_x - 0.5)),
        target.nx);
    const int ix1 = clamp_idx(
        static_cast<int>(std::ceil((b.x_max - target.origin.x()) / target.voxel_size_x)),
        target.nx);
    const int iy0 = clamp_idx(
        static_cast<int>(std::floor((b.y_min - target.origin.y()) / target.voxel_size_y - 0.5)),
        target.ny);
    const int iy1 = clamp_idx(
        static_cast<int>(std::ceil((b.y_max - target.origin.y()) / target.voxel_size_y)),
        target.ny);

    for (int iz = 0; iz < target.nz; ++iz) {
      const double zc = target.edge(2, iz) + 0.5 * target.slice_thickness;
      if (zc < z_lo || zc >= z_hi) continue;
      auto slice = out.slice(iz);
      for (int iy = iy0; iy <= iy1; ++iy) {
        const double yc = target.edge(1, iy) + 0.5 * target.voxel_size_y;
        for (int ix = ix0; ix <= ix1; ++ix) {
          const double xc = target.edge(0, ix) + 0.5 * target.voxel_size_x;
          if (r.contains_xy(xc, yc)) slice(ix, iy) = r.rsp;
        }
      }
    }
  }
  return out;
}

HullMask true_hull(const RspGrid& rsp) {
  HullMask mask(rsp.grid(), 0);
  const double* in = rsp.data();
  std::uint8_t* out = mask.data();
  for (std::size_t i = 0; i < rsp.size(); ++i) out[i] = in[i] > 0.0 ? 1 : 0;
  return mask;
}

PhantomSpec default_head_phantom(int nz) {
  PhantomSpec spec;
  spec.grid.nx = 200;
  spec.grid.ny = 200;
  spec.grid.nz = nz;
  spec.grid.voxel_size_x = 1.0;
  spec.grid.voxel_size_y = 1.0;
  spec.grid.slice_thickness = 1.0;
  spec.grid.origin = {-100.0, -100.0, -0.5 * nz};

  const int z_last = nz - 1;
  EllipseRegion skull;
  skull.center = {0.0, 0.0};
  skull.semi_axis_a = 62.5;
  skull.semi_axis_b = 78.16;
  skull.rsp = 1.6;
  skull.z_first = 0;
  skull.z_last = z_last;
  skull.priority = 0;

  EllipseRegion brain;
  brain.center = {0.0, 0.0};
  brain.semi_axis_a = 54.0;
  brain.semi_axis_b = 70.0;
  brain.rsp = 1.04;
  brain.z_first = 0;
  brain.z_last = z_last;
  brain.priority = 1;

  EllipseRegion ventricle_left;
  ventricle_left.center = {-14.0, 8.0};
  ventricle_left.semi_axis_a = 7.0;
  ventricle_left.semi_axis_b = 16.0;
  ventricle_left.rsp = 0.9;
  ventricle_left.z_first = 0;
  ventricle_left.z_last = z_last;
  ventricle_left.priority = 2;

  EllipseRegion ventricle_right = ventricle_left;
  ventricle_right.center = {14.0, 8.0};
  ventricle_right.priority = 3;

  spec.regions = {skull, brain, ventricle_left, ventricle_right};
  return spec;
}

}  // namespace pct
