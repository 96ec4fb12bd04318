#pragma once

#include <cmath>
#include <cstdint>
#include <type_traits>

#include <Eigen/Dense>

namespace pct {

/// One measured proton: where it entered and left the scanner, its in-plane
/// direction angles relative to the beam axis, and the water-equivalent path
/// length derived from its energy loss. Stored as 32-bit fields; this struct
/// is also the on-disk record layout (see history_io.hpp).
struct ProtonHistory {
  float projection_angle = 0.0f;  // deg
  float entry[3] = {0, 0, 0};     // mm
  float exit[3] = {0, 0, 0};      // mm
  float entry_angle = 0.0f;       // rad, in-plane, relative to beam axis
  float exit_angle = 0.0f;        // rad
  float vertical_displacement = 0.0f;  // mm, mid-chord height
  float wepl = 0.0f;                   // mm

  Eigen::Vector3d entry_point() const { return {entry[0], entry[1], entry[2]}; }
  Eigen::Vector3d exit_point() const { return {exit[0], exit[1], exit[2]}; }
};

static_assert(sizeof(ProtonHistory) == 12 * sizeof(float));
static_assert(std::is_trivially_copyable_v<ProtonHistory>);

/// Change of in-plane direction angle accumulated inside the object.
inline double rel_horizontal_angle(const ProtonHistory& h) {
  return static_cast<double>(h.exit_angle) - static_cast<double>(h.entry_angle);
}

/// Out-of-plane direction change, from the entry/exit points.
inline double rel_vertical_angle(const ProtonHistory& h) {
  const Eigen::Vector3d d = h.exit_point() - h.entry_point();
  const double inplane = std::hypot(d.x(), d.y());
  if (inplane == 0.0) return 0.0;
  return std::atan2(d.z(), inplane);
}

/// Signed lateral offset of the chord midpoint from the beam axis of the
/// history's projection (the sinogram coordinate).
inline double lateral_displacement(const ProtonHistory& h) {
  const double phi = static_cast<double>(h.projection_angle) * M_PI / 180.0;
  const Eigen::Vector3d mid = 0.5 * (h.entry_point() + h.exit_point());
  return -std::sin(phi) * mid.x() + std::cos(phi) * mid.y();
}

}  // namespace pct
