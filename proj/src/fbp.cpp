#include "pct/fbp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pct {

Sinogram build_sinogram(const BinGrid& bins) {
  Sinogram sino;
  sino.lateral_bin_mm = bins.config().lateral_bin_mm;
  sino.vertical_bin_mm = bins.config().vertical_bin_mm;
  if (bins.empty()) return sino;

  int il_min = INT_MAX, il_max = INT_MIN, iv_min = INT_MAX, iv_max = INT_MIN;
  std::map<int, std::pair<double, std::size_t>> angle_by_view;  // ia -> (sum, n)
  for (const auto& [key, bin] : bins.bins()) {
    il_min = std::min(il_min, key.il);
    il_max = std::max(il_max, key.il);
    iv_min = std::min(iv_min, key.iv);
    iv_max = std::max(iv_max, key.iv);
    auto& [sum, n] = angle_by_view[key.ia];
    sum += bin.stats.mean_angle_deg * bin.stats.count;
    n += bin.stats.count;
  }
  sino.lateral_first = il_min;
  sino.vertical_first = iv_min;
  const int nl = il_max - il_min + 1;
  const int nv = iv_max - iv_min + 1;

  std::map<int, std::size_t> view_of;
  for (const auto& [ia, acc] : angle_by_view) {
    view_of[ia] = sino.views.size();
    sino.angles_deg.push_back(acc.first / static_cast<double>(acc.second));
    sino.views.emplace_back(Eigen::ArrayXXd::Zero(nl, nv));
  }
  for (const auto& [key, bin] : bins.bins()) {
    sino.views[view_of[key.ia]](key.il - il_min, key.iv - iv_min) = bin.stats.mean_wepl;
  }
  sino.empty_bins = sino.views.size() * static_cast<std::size_t>(nl) * nv -
                    bins.bins().size();
  return sino;
}

Eigen::ArrayXd shepp_logan_filter(const Eigen::Ref<const Eigen::ArrayXd>& profile,
                                  double bin_width_mm) {
  const Eigen::Index n = profile.size();
  if (n < 1) throw std::invalid_argument("shepp_logan_filter: empty profile");
  if (!(bin_width_mm > 0.0))
    throw std::invalid_argument("shepp_logan_filter: bad bin width");
  const double tau = bin_width_mm;
  const double scale = -2.0 / (M_PI * M_PI * tau * tau);
  Eigen::ArrayXd kernel(2 * n - 1);
  for (Eigen::Index k = -(n - 1); k <= n - 1; ++k)
    kernel[k + n - 1] = scale / (4.0 * static_cast<double>(k) * k - 1.0);
  Eigen::ArrayXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) acc += kernel[i - m + n - 1] * profile[m];
    out[i] = acc;
  }
  return out;
}

namespace {

void check_angular_coverage(const Sinogram& sino) {
  const std::size_t n = sino.angles_deg.size();
  if (n < 2) throw std::invalid_argument("fbp_reconstruct: too few views");
  std::vector<double> gaps;
  gaps.reserve(n);
  for (std::size_t i = 1; i < n; ++i)
    gaps.push_back(sino.angles_deg[i] - sino.angles_deg[i - 1]);
  gaps.push_back(sino.angles_deg.front() + 360.0 - sino.angles_deg.back());
  std::vector<double> sorted = gaps;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double worst = sorted.back();
  if (worst > 2.0 * median + 1e-9)
    throw std::invalid_argument(
        "fbp_reconstruct: angular coverage gap of " + std::to_string(worst) +
        " degrees exceeds one missing view");
}

}  // namespace

RspGrid fbp_reconstruct(const Sinogram& sino, const GridSpec& grid, int threads) {
  grid.validate();
  check_angular_coverage(sino);
  const int nl = sino.n_lateral();
  const int nv = sino.n_vertical();
  const std::size_t n_views = sino.views.size();
  const double tau = sino.lateral_bin_mm;
  const double dphi = 2.0 * M_PI / static_cast<double>(n_views);
  const double weight = 0.5 * dphi * tau;  // half: full-circle data covers each line twice

  RspGrid recon(grid, 0.0);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif

#pragma omp parallel for schedule(dynamic)
  for (int iz = 0; iz < grid.nz; ++iz) {
    const double zc = grid.edge(2, iz) + 0.5 * grid.slice_thickness;
    auto slice = recon.slice(iz);
    Eigen::ArrayXd profile(nl);
    for (std::size_t view = 0; view < n_views; ++view) {
      // lateral profile at this slice height: linear interpolation across
      // vertical bins, clamped at the band edges
      const double u = (zc - sino.vertical_center(0)) / sino.vertical_bin_mm;
      const int k0 = static_cast<int>(std::floor(u));
      const double w = u - k0;
      const int ka = std::clamp(k0, 0, nv - 1);
      const int kb = std::clamp(k0 + 1, 0, nv - 1);
      profile = (1.0 - w) * sino.views[view].col(ka) + w * sino.views[view].col(kb);

      const Eigen::ArrayXd filtered = shepp_logan_filter(profile, tau);
      const double phi = sino.angles_deg[view] * M_PI / 180.0;
      const double cos_phi = std::cos(phi);
      const double sin_phi = std::sin(phi);
      const double s0 = sino.lateral_center(0);

      for (int iy = 0; iy < grid.ny; ++iy) {
        const double y = grid.edge(1, iy) + 0.5 * grid.voxel_size_y;
        for (int ix = 0; ix < grid.nx; ++ix) {
          const double x = grid.edge(0, ix) + 0.5 * grid.voxel_size_x;
          const double s = -sin_phi * x + cos_phi * y;
          const double q = (s - s0) / tau;
          const int j0 = static_cast<int>(std::floor(q));
          const double f = q - j0;
          double val = 0.0;
          if (j0 >= 0 && j0 < nl) val += (1.0 - f) * filtered[j0];
          if (j0 + 1 >= 0 && j0 + 1 < nl) val += f * filtered[j0 + 1];
          slice(ix, iy) += weight * val;
        }
      }
    }
  }
  return recon;
}

HullMask fbp_hull(const RspGrid& recon, const AlgorithmThresholds& th) {
  th.validate();
  HullMask mask(recon.grid(), 0);
  const double* in = recon.data();
  std::uint8_t* out = mask.data();
  for (std::size_t i = 0; i < recon.size(); ++i)
    out[i] = in[i] >= th.fbp_rsp_threshold ? 1 : 0;
  return mask;
}

}  // namespace pct
