#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pct {

/// Index of a voxel inside a GridSpec. All components are zero-based.
struct VoxelIndex {
  int ix = 0;
  int iy = 0;
  int iz = 0;

  friend bool operator==(const VoxelIndex& a, const VoxelIndex& b) {
    return a.ix == b.ix && a.iy == b.iy && a.iz == b.iz;
  }
  friend bool operator!=(const VoxelIndex& a, const VoxelIndex& b) { return !(a == b); }
  friend bool operator<(const VoxelIndex& a, const VoxelIndex& b) {
    if (a.iz != b.iz) return a.iz < b.iz;
    if (a.iy != b.iy) return a.iy < b.iy;
    return a.ix < b.ix;
  }
};

/// Axis-aligned voxel grid positioned relative to the scanner isocenter.
///
/// All lengths are mm. `origin` is the physical position of the grid corner
/// with the lowest coordinates, so voxel (ix,iy,iz) spans
/// [origin + i*size, origin + (i+1)*size) on each axis and its center is at
/// origin + (i + 0.5)*size.
struct GridSpec {
  int nx = 1;
  int ny = 1;
  int nz = 1;
  double voxel_size_x = 1.0;
  double voxel_size_y = 1.0;
  double slice_thickness = 1.0;
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();

  void validate() const {
    if (nx < 1 || ny < 1 || nz < 1)
      throw std::invalid_argument("GridSpec: voxel counts must be >= 1");
    if (!(voxel_size_x > 0.0) || !(voxel_size_y > 0.0) || !(slice_thickness > 0.0))
      throw std::invalid_argument("GridSpec: voxel sizes must be > 0");
  }

  int count(int axis) const { return axis == 0 ? nx : axis == 1 ? ny : nz; }
  double size(int axis) const {
    return axis == 0 ? voxel_size_x : axis == 1 ? voxel_size_y : slice_thickness;
  }

  /// Physical coordinate of boundary plane `index` on `axis` (index may be 0..count).
  double edge(int axis, int index) const {
    return origin[axis] + static_cast<double>(index) * size(axis);
  }

  Eigen::Vector3d voxel_size() const {
    return {voxel_size_x, voxel_size_y, slice_thickness};
  }
  Eigen::Vector3d extent() const {
    return {nx * voxel_size_x, ny * voxel_size_y, nz * slice_thickness};
  }
  Eigen::Vector3d max_corner() const { return origin + extent(); }

  Eigen::Vector3d center_of(const VoxelIndex& v) const {
    return {edge(0, v.ix) + 0.5 * voxel_size_x, edge(1, v.iy) + 0.5 * voxel_size_y,
            edge(2, v.iz) + 0.5 * slice_thickness};
  }

  bool contains(const VoxelIndex& v) const {
    return v.ix >= 0 && v.ix < nx && v.iy >= 0 && v.iy < ny && v.iz >= 0 && v.iz < nz;
  }

  std::size_t voxel_count() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
           static_cast<std::size_t>(nz);
  }

  std::size_t flat(int ix, int iy, int iz) const {
    return static_cast<std::size_t>(ix) +
           static_cast<std::size_t>(nx) *
               (static_cast<std::size_t>(iy) + static_cast<std::size_t>(ny) * iz);
  }
  std::size_t flat(const VoxelIndex& v) const { return flat(v.ix, v.iy, v.iz); }

  bool same_geometry(const GridSpec& o) const {
    return nx == o.nx && ny == o.ny && nz == o.nz && voxel_size_x == o.voxel_size_x &&
           voxel_size_y == o.voxel_size_y && slice_thickness == o.slice_thickness &&
           origin == o.origin;
  }
};

/// Straight segment between two distinct physical points.
class LinePath {
 public:
  LinePath(const Eigen::Vector3d& entry, const Eigen::Vector3d& exit)
      : entry_(entry), exit_(exit) {
    if (entry == exit) throw std::invalid_argument("LinePath: entry and exit coincide");
  }

  const Eigen::Vector3d& entry() const { return entry_; }
  const Eigen::Vector3d& exit() const { return exit_; }
  Eigen::Vector3d delta() const { return exit_ - entry_; }
  Eigen::Vector3d direction() const { return delta().normalized(); }
  double length() const { return delta().norm(); }
  LinePath reversed() const { return {exit_, entry_}; }

 private:
  Eigen::Vector3d entry_;
  Eigen::Vector3d exit_;
};

/// Dense 3D voxel volume over a GridSpec. Storage is a flat Eigen array in
/// x-fastest order, so one z-slice is a contiguous (nx x ny) block that can be
/// exposed as an Eigen map without copying.
template <typename T>
class Volume {
 public:
  using Scalar = T;
  using Slice = Eigen::Map<Eigen::Array<T, Eigen::Dynamic, Eigen::Dynamic>>;
  using ConstSlice = Eigen::Map<const Eigen::Array<T, Eigen::Dynamic, Eigen::Dynamic>>;

  Volume() = default;
  explicit Volume(const GridSpec& grid, T value = T{}) : grid_(grid) {
    grid_.validate();
    data_.assign(grid_.voxel_count(), value);
  }

  const GridSpec& grid() const { return grid_; }

  T& at(int ix, int iy, int iz) { return data_[grid_.flat(ix, iy, iz)]; }
  const T& at(int ix, int iy, int iz) const { return data_[grid_.flat(ix, iy, iz)]; }
  T& operator[](const VoxelIndex& v) { return data_[grid_.flat(v)]; }
  const T& operator[](const VoxelIndex& v) const { return data_[grid_.flat(v)]; }

  /// Map of one z-slice as an (nx x ny) array; element (ix, iy).
  Slice slice(int iz) {
    check_slice(iz);
    return Slice(data_.data() + grid_.flat(0, 0, iz), grid_.nx, grid_.ny);
  }
  ConstSlice slice(int iz) const {
    check_slice(iz);
    return ConstSlice(data_.data() + grid_.flat(0, 0, iz), grid_.nx, grid_.ny);
  }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  friend bool operator==(const Volume& a, const Volume& b) {
    return a.grid_.same_geometry(b.grid_) && a.data_ == b.data_;
  }

 private:
  void check_slice(int iz) const {
    if (iz < 0 || iz >= grid_.nz) throw std::out_of_range("Volume: slice index out of range");
  }

  GridSpec grid_;
  std::vector<T> data_;
};

using RspGrid = Volume<double>;
using HullMask = Volume<std::uint8_t>;
using CountVolume = Volume<std::uint32_t>;

}  // namespace pct
