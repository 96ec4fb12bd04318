#pragma once

#include <string>
#include <vector>

#include "pct/grid.hpp"

namespace pct {

/// One phantom region: a 2D ellipse in the x/y plane extruded over an
/// inclusive slice interval of the owning grid (an elliptic cylinder).
struct EllipseRegion {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();  // mm
  double semi_axis_a = 1.0;                          // mm, along rotated x
  double semi_axis_b = 1.0;                          // mm, along rotated y
  double rotation = 0.0;                             // radians
  double rsp = 0.0;
  int z_first = 0;
  int z_last = 0;
  int priority = 0;  // higher paints over lower

  void validate() const {
    if (!(semi_axis_a > 0.0) || !(semi_axis_b > 0.0))
      throw std::invalid_argument("EllipseRegion: semi-axes must be > 0");
    if (rsp < 0.0) throw std::invalid_argument("EllipseRegion: rsp must be >= 0");
    if (z_last < z_first)
      throw std::invalid_argument("EllipseRegion: empty slice interval");
  }

  bool contains_xy(double x, double y) const {
    const double dx = x - center.x();
    const double dy = y - center.y();
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    const double xr = (c * dx + s * dy) / semi_axis_a;
    const double yr = (-s * dx + c * dy) / semi_axis_b;
    return xr * xr + yr * yr <= 1.0;
  }
};

struct PhantomSpec {
  GridSpec grid;
  std::vector<EllipseRegion> regions;
};

/// Paints the phantom onto an arbitrary target grid: every voxel takes the RSP
/// of the highest-priority region containing its center, 0 elsewhere. Region
/// slice intervals are defined on the spec's own grid and carried over through
/// physical z. Regions reaching outside the target extent are clipped with a
/// warning, not an error.
RspGrid rasterize_onto(const PhantomSpec& spec, const GridSpec& target,
                       std::vector<std::string>* warnings = nullptr);

inline RspGrid rasterize_phantom(const PhantomSpec& spec,
                                 std::vector<std::string>* warnings = nullptr) {
  return rasterize_onto(spec, spec.grid, warnings);
}

/// Binary object hull of an RSP volume: 1 wherever RSP > 0.
HullMask true_hull(const RspGrid& rsp);

/// Built-in digital head phantom: a skull ellipse enclosing brain tissue and
/// two fluid-filled ventricles (RSP 1.6 / 1.04 / 0.9), extruded over `nz`
/// slices of a 200x200 grid of 1 mm voxels centered on the isocenter. The
/// ellipse axes are artifact defaults sized so one slice contains exactly
/// 15,336 object voxels; they are configuration, not measured anatomy.
PhantomSpec default_head_phantom(int nz = 24);

}  // namespace pct
