#include "pct/simulator.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pct {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index * 2654435761ULL + salt)));
}

struct Aabb {
  Eigen::Vector3d lo, hi;
  bool empty = true;
};

Aabb object_bounds(const RspGrid& rsp) {
  const GridSpec& g = rsp.grid();
  int lo[3] = {g.nx, g.ny, g.nz};
  int hi[3] = {-1, -1, -1};
  for (int iz = 0; iz < g.nz; ++iz)
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        if (rsp.at(ix, iy, iz) <= 0.0) continue;
        lo[0] = std::min(lo[0], ix);
        lo[1] = std::min(lo[1], iy);
        lo[2] = std::min(lo[2], iz);
        hi[0] = std::max(hi[0], ix);
        hi[1] = std::max(hi[1], iy);
        hi[2] = std::max(hi[2], iz);
      }
  Aabb box;
  if (hi[0] < 0) return box;
  box.empty = false;
  box.lo = {g.edge(0, lo[0]), g.edge(1, lo[1]), g.edge(2, lo[2])};
  box.hi = {g.edge(0, hi[0] + 1), g.edge(1, hi[1] + 1), g.edge(2, hi[2] + 1)};
  return box;
}

bool segment_hits_box(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Aabb& box) {
  if (box.empty) return false;
  double t0 = 0.0, t1 = 1.0;
  const Eigen::Vector3d d = b - a;
  for (int k = 0; k < 3; ++k) {
    if (d[k] == 0.0) {
      if (a[k] < box.lo[k] || a[k] > box.hi[k]) return false;
    } else {
      double ta = (box.lo[k] - a[k]) / d[k];
      double tb = (box.hi[k] - a[k]) / d[k];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
    }
  }
  return t0 <= t1;
}

}  // namespace

double integrate_wepl(const LinePath& line, const RspGrid& rsp) {
  double sum = 0.0;
  for_each_voxel_on_line(line, rsp.grid(),
                         [&](const VoxelIndex& v) { sum += rsp[v]; });
  return sum * rsp.grid().voxel_size_x;
}

double apply_wepl_noise(double wepl, const NoiseParams& params, std::mt19937_64& rng) {
  params.validate();
  const double sigma = params.sigma_base_mm + params.sigma_slope * wepl;
  if (sigma == 0.0) return wepl;
  std::normal_distribution<double> gauss(0.0, sigma);
  return std::max(0.0, wepl + gauss(rng));
}

std::vector<ProtonHistory> generate_histories(const RspGrid& phantom,
                                              const ScanConfig& cfg, int threads) {
  cfg.validate();
  const Aabb box = object_bounds(phantom);
  const std::size_t per = static_cast<std::size_t>(cfg.protons_per_projection);
  std::vector<ProtonHistory> out(cfg.total_histories());

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif

#pragma omp parallel for schedule(dynamic)
  for (int ip = 0; ip < cfg.num_projections; ++ip) {
    const double phi_deg = ip * cfg.angular_step_deg;
    const double phi = phi_deg * M_PI / 180.0;
    const Eigen::Vector3d beam(std::cos(phi), std::sin(phi), 0.0);
    const Eigen::Vector3d lateral(-std::sin(phi), std::cos(phi), 0.0);

    auto rng_geo = make_stream(cfg.seed, static_cast<std::uint64_t>(ip), 0);
    auto rng_noise = make_stream(cfg.seed, static_cast<std::uint64_t>(ip), 1);
    std::uniform_real_distribution<double> u_lat(-0.5 * cfg.fov_lateral_mm,
                                                 0.5 * cfg.fov_lateral_mm);
    std::uniform_real_distribution<double> u_vert(cfg.vertical_min_mm,
                                                  cfg.vertical_max_mm);
    std::normal_distribution<double> unit_normal(0.0, 1.0);

    const bool scatter_on = cfg.scatter.sigma_displacement_mm > 0.0 ||
                            cfg.scatter.sigma_angle_rad > 0.0;
    const double rho = cfg.scatter.correlation;
    const double rho_rest = std::sqrt(std::max(0.0, 1.0 - rho * rho));

    ProtonHistory* dst = out.data() + per * static_cast<std::size_t>(ip);
    for (std::size_t k = 0; k < per; ++k) {
      const double lat = u_lat(rng_geo);
      const double z = u_vert(rng_geo);
      const Eigen::Vector3d entry =
          -cfg.scan_radius_mm * beam + lat * lateral + Eigen::Vector3d(0, 0, z);
      Eigen::Vector3d exit =
          cfg.scan_radius_mm * beam + lat * lateral + Eigen::Vector3d(0, 0, z);

      const bool crosses = segment_hits_box(entry, exit, box);
      double exit_angle = 0.0;
      if (crosses && scatter_on) {
        const double z1 = unit_normal(rng_geo);
        const double z2 = unit_normal(rng_geo);
        const double z3 = unit_normal(rng_geo);
        const double d_lat = cfg.scatter.sigma_displacement_mm * z1;
        exit_angle = cfg.scatter.sigma_angle_rad * (rho * z1 + rho_rest * z2);
        const double d_z = cfg.scatter.sigma_displacement_mm * z3;
        exit += d_lat * lateral + Eigen::Vector3d(0, 0, d_z);
      }

      double wepl = crosses ? integrate_wepl(LinePath(entry, exit), phantom) : 0.0;
      if (cfg.noise_enabled) wepl = apply_wepl_noise(wepl, cfg.noise, rng_noise);

      ProtonHistory h;
      h.projection_angle = static_cast<float>(phi_deg);
      for (int a = 0; a < 3; ++a) {
        h.entry[a] = static_cast<float>(entry[a]);
        h.exit[a] = static_cast<float>(exit[a]);
      }
      h.entry_angle = 0.0f;
      h.exit_angle = static_cast<float>(exit_angle);
      h.vertical_displacement = static_cast<float>(0.5 * (entry.z() + exit.z()));
      h.wepl = static_cast<float>(wepl);
      dst[k] = h;
    }
  }
  return out;
}

}  // namespace pct
