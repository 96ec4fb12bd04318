#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pct/traversal.hpp"

using namespace pct;
using pct::testing::brute_force_voxels;

namespace {

GridSpec make_grid(int nx, int ny, int nz, double sx, double sy, double sz,
                   const Eigen::Vector3d& origin) {
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.voxel_size_x = sx;
  g.voxel_size_y = sy;
  g.slice_thickness = sz;
  g.origin = origin;
  return g;
}

std::set<VoxelIndex> as_set(const std::vector<VoxelIndex>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("axis-parallel line traverses one full row in order") {
  const auto grid = make_grid(10, 10, 1, 1.0, 1.0, 1.0, {0.0, 0.0, 0.0});
  const LinePath line({-5.0, 5.5, 0.5}, {15.0, 5.5, 0.5});
  const auto voxels = voxels_along_line(line, grid);
  REQUIRE(voxels.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(voxels[i] == VoxelIndex{i, 5, 0});
  }
}

TEST_CASE("zero-length segment is rejected") {
  CHECK_THROWS_AS(LinePath({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("segment outside the grid yields no voxels") {
  const auto grid = make_grid(10, 10, 1, 1.0, 1.0, 1.0, {0.0, 0.0, 0.0});
  const LinePath line({-5.0, -5.0, 0.5}, {-1.0, 20.0, 0.5});
  CHECK(voxels_along_line(line, grid).empty());
}

TEST_CASE("traversal matches brute-force closed-box oracle on random lines") {
  const GridSpec grids[] = {
      make_grid(200, 200, 1, 1.0, 1.0, 1.0, {-100.0, -100.0, 0.0}),
      make_grid(40, 50, 8, 1.0, 1.0, 3.0, {-20.0, -25.0, -12.0}),
      make_grid(17, 9, 5, 0.7, 1.3, 2.1, {1.5, -4.0, 0.0}),
  };
  std::mt19937_64 rng(20240915);
  for (const auto& grid : grids) {
    std::uniform_real_distribution<double> ux(grid.origin[0] - 30.0,
                                              grid.max_corner()[0] + 30.0);
    std::uniform_real_distribution<double> uy(grid.origin[1] - 30.0,
                                              grid.max_corner()[1] + 30.0);
    std::uniform_real_distribution<double> uz(grid.origin[2] - 10.0,
                                              grid.max_corner()[2] + 10.0);
    int checked = 0;
    while (checked < 100) {
      const Eigen::Vector3d a(ux(rng), uy(rng), uz(rng));
      const Eigen::Vector3d b(ux(rng), uy(rng), uz(rng));
      if (a == b) continue;
      ++checked;
      const LinePath line(a, b);
      const auto got = voxels_along_line(line, grid);
      const auto want = brute_force_voxels(line, grid);
      REQUIRE(got.size() == want.size());
      CHECK(as_set(got) == as_set(want));
    }
  }
}

TEST_CASE("forward traversal equals reversed backward traversal") {
  const auto grid = make_grid(60, 60, 4, 1.0, 1.0, 2.0, {-30.0, -30.0, -4.0});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-45.0, 45.0);
  std::uniform_real_distribution<double> uz(-6.0, 6.0);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Vector3d a(u(rng), u(rng), uz(rng));
    const Eigen::Vector3d b(u(rng), u(rng), uz(rng));
    if (a == b) continue;
    auto fwd = voxels_along_line(LinePath(a, b), grid);
    auto bwd = voxels_along_line(LinePath(b, a), grid);
    std::reverse(bwd.begin(), bwd.end());
    CHECK(fwd == bwd);
  }
}

TEST_CASE("chord-length sanity on an isotropic grid") {
  const auto grid = make_grid(50, 50, 50, 1.0, 1.0, 1.0, {0.0, 0.0, 0.0});
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> inside(5.0, 45.0);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Vector3d a(inside(rng), inside(rng), inside(rng));
    const Eigen::Vector3d b(inside(rng), inside(rng), inside(rng));
    if (a == b) continue;
    const LinePath line(a, b);
    const auto count = voxels_along_line(line, grid).size();
    CHECK(static_cast<double>(count) * 1.0 >= line.length());
  }
}

TEST_CASE("corner and edge touches include all adjacent voxels") {
  const auto grid = make_grid(4, 4, 1, 1.0, 1.0, 1.0, {0.0, 0.0, 0.0});

  SUBCASE("diagonal through lattice corners") {
    // passes exactly through (1,1), (2,2), (3,3) corners
    const LinePath line({0.5, 0.5, 0.5}, {3.5, 3.5, 0.5});
    const auto got = as_set(voxels_along_line(line, grid));
    const auto want = as_set(brute_force_voxels(line, grid));
    CHECK(got == want);
    // corner (1,1) touches voxels (0,1) and (1,0) with zero chord
    CHECK(got.count(VoxelIndex{0, 1, 0}) == 1);
    CHECK(got.count(VoxelIndex{1, 0, 0}) == 1);
  }

  SUBCASE("line lying exactly in a voxel boundary plane") {
    const LinePath line({-1.0, 2.0, 0.5}, {5.0, 2.0, 0.5});
    const auto got = as_set(voxels_along_line(line, grid));
    CHECK(got == as_set(brute_force_voxels(line, grid)));
    CHECK(got.size() == 8);  // both rows iy=1 and iy=2
  }

  SUBCASE("segment endpoint exactly on an interior face") {
    const LinePath line({0.5, 0.5, 0.5}, {2.0, 0.5, 0.5});
    const auto got = as_set(voxels_along_line(line, grid));
    CHECK(got == as_set(brute_force_voxels(line, grid)));
    CHECK(got.count(VoxelIndex{2, 0, 0}) == 1);  // touched at the endpoint
  }

  SUBCASE("segment starting on a lattice corner") {
    const LinePath line({2.0, 2.0, 0.5}, {3.5, 3.0, 0.5});
    const auto got = as_set(voxels_along_line(line, grid));
    CHECK(got == as_set(brute_force_voxels(line, grid)));
    CHECK(got.count(VoxelIndex{1, 1, 0}) == 1);  // behind the start corner
  }
}

TEST_CASE("point_to_voxel floor mapping") {
  const auto grid = make_grid(10, 10, 2, 1.0, 1.0, 3.0, {0.0, 0.0, 0.0});
  CHECK(point_to_voxel({0.0, 0.0, 0.0}, grid) == VoxelIndex{0, 0, 0});
  CHECK(point_to_voxel({3.5, 4.5, 1.5}, grid) == VoxelIndex{3, 4, 0});
  CHECK(!point_to_voxel({10.5, 5.0, 1.0}, grid).has_value());
  // max boundary maps outside
  CHECK(!point_to_voxel({10.0, 5.0, 1.0}, grid).has_value());
}

TEST_CASE("slice views read and write") {
  GridSpec g = make_grid(6, 5, 3, 1.0, 1.0, 1.0, {0.0, 0.0, 0.0});
  HullMask mask(g, 0);
  CHECK((mask.slice(0) == 0).all());
  mask.slice(1)(2, 3) = 1;
  CHECK(mask.at(2, 3, 1) == 1);
  CHECK_THROWS_AS(mask.slice(3), std::out_of_range);
}
