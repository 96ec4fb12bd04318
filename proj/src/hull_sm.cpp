#include "pct/hull_sm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pct/detail/count_paths.hpp"
#include "pct/filters.hpp"

namespace pct {

namespace {

// Otsu threshold over positive values, on a 256-bin histogram.
double otsu_threshold(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const double vmax = *std::max_element(values.begin(), values.end());
  if (vmax <= 0.0) return 0.0;
  constexpr int kBins = 256;
  std::vector<std::size_t> hist(kBins, 0);
  for (double v : values) {
    int b = static_cast<int>(v / vmax * (kBins - 1));
    hist[std::clamp(b, 0, kBins - 1)]++;
  }
  const double total = static_cast<double>(values.size());
  double sum_all = 0.0;
  for (int b = 0; b < kBins; ++b) sum_all += b * static_cast<double>(hist[b]);
  double w0 = 0.0, sum0 = 0.0, best = -1.0;
  int best_bin = 0;
  for (int b = 0; b < kBins; ++b) {
    w0 += static_cast<double>(hist[b]);
    if (w0 == 0.0) continue;
    const double w1 = total - w0;
    if (w1 == 0.0) break;
    sum0 += b * static_cast<double>(hist[b]);
    const double m0 = sum0 / w0;
    const double m1 = (sum_all - sum0) / w1;
    const double between = w0 * w1 * (m0 - m1) * (m0 - m1);
    if (between > best) {
      best = between;
      best_bin = b;
    }
  }
  return (best_bin + 0.5) / (kBins - 1) * vmax;
}

}  // namespace

EdgeChain sm_strongest_edge(const Eigen::Ref<const Eigen::ArrayXXd>& counts,
                            double gaussian_sigma) {
  if ((counts <= 0.0).all()) throw std::domain_error("no edge");
  const Eigen::Index nx = counts.rows(), ny = counts.cols();

  const ArrayXXd smoothed = gaussian_blur(counts, gaussian_sigma);
  ArrayXXd gx, gy;
  sobel_gradients(smoothed, gx, gy);
  const ArrayXXd mag = (gx * gx + gy * gy).sqrt();

  // Non-maximum suppression along the quantized gradient direction. The
  // comparison is inclusive so ridge plateaus (two equal columns across a
  // sharp step) survive on both sides.
  ArrayXXd nms = ArrayXXd::Zero(nx, ny);
  auto mag_at = [&](Eigen::Index i, Eigen::Index j) -> double {
    if (i < 0 || i >= nx || j < 0 || j >= ny) return 0.0;
    return mag(i, j);
  };
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i) {
      const double m = mag(i, j);
      if (m <= 0.0) continue;
      const double angle = std::atan2(gy(i, j), gx(i, j));
      // quantize to one of four directions: 0, 45, 90, 135 degrees
      const int dir = static_cast<int>(std::lround(angle / (M_PI / 4.0))) & 3;
      int di = 0, dj = 0;
      switch (dir) {
        case 0: di = 1; dj = 0; break;
        case 1: di = 1; dj = 1; break;
        case 2: di = 0; dj = 1; break;
        default: di = -1; dj = 1; break;
      }
      if (m >= mag_at(i + di, j + dj) && m >= mag_at(i - di, j - dj)) nms(i, j) = m;
    }

  // Double-threshold hysteresis: strong seeds grow through weak pixels. The
  // high threshold comes from Otsu over the surviving magnitudes, which keeps
  // faint interior noise ridges out of the boundary chain.
  std::vector<double> survivors;
  survivors.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) / 8);
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i)
      if (nms(i, j) > 0.0) survivors.push_back(nms(i, j));
  const double high = otsu_threshold(survivors);
  const double low = 0.5 * high;

  Eigen::Array<std::int8_t, Eigen::Dynamic, Eigen::Dynamic> state(nx, ny);
  state.setZero();  // 0 none, 1 weak, 2 edge
  std::vector<std::pair<int, int>> stack;
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i) {
      if (nms(i, j) <= 0.0 || nms(i, j) < low) continue;
      if (nms(i, j) >= high) {
        state(i, j) = 2;
        stack.emplace_back(static_cast<int>(i), static_cast<int>(j));
      } else {
        state(i, j) = 1;
      }
    }
  while (!stack.empty()) {
    const auto [ci, cj] = stack.back();
    stack.pop_back();
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        const int ni = ci + di, nj = cj + dj;
        if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;
        if (state(ni, nj) == 1) {
          state(ni, nj) = 2;
          stack.emplace_back(ni, nj);
        }
      }
  }

  // 8-connected chains over the final edge pixels.
  EdgeChain best;
  bool have_best = false;
  Eigen::Array<std::int8_t, Eigen::Dynamic, Eigen::Dynamic> seen(nx, ny);
  seen.setZero();
  for (Eigen::Index j0 = 0; j0 < ny; ++j0)
    for (Eigen::Index i0 = 0; i0 < nx; ++i0) {
      if (state(i0, j0) != 2 || seen(i0, j0)) continue;
      EdgeChain chain;
      double grad_sum = 0.0;
      double raw_max = 0.0;
      std::vector<std::pair<int, int>> todo{{static_cast<int>(i0), static_cast<int>(j0)}};
      seen(i0, j0) = 1;
      while (!todo.empty()) {
        const auto [ci, cj] = todo.back();
        todo.pop_back();
        chain.pixels.emplace_back(ci, cj);
        grad_sum += mag(ci, cj);
        raw_max = std::max(raw_max, counts(ci, cj));
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di) {
            const int ni = ci + di, nj = cj + dj;
            if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;
            if (state(ni, nj) == 2 && !seen(ni, nj)) {
              seen(ni, nj) = 1;
              todo.emplace_back(ni, nj);
            }
          }
      }
      chain.mean_gradient = grad_sum / static_cast<double>(chain.pixels.size());
      chain.threshold = raw_max;
      const bool better =
          !have_best || chain.mean_gradient > best.mean_gradient ||
          (chain.mean_gradient == best.mean_gradient && chain.threshold < best.threshold);
      if (better) {
        best = std::move(chain);
        have_best = true;
      }
    }
  if (!have_best) throw std::domain_error("no edge");
  return best;
}

double sm_threshold_for_slice(const Eigen::Ref<const Eigen::ArrayXXd>& counts,
                              double gaussian_sigma) {
  return sm_strongest_edge(counts, gaussian_sigma).threshold;
}

SmDetection sm_detect(std::span<const ProtonHistory> histories, const GridSpec& grid,
                      const AlgorithmThresholds& th, int threads) {
  th.validate();
  grid.validate();
  SmDetection det{HullMask(grid, 0), CountVolume(grid, 0), {}, {}, 0};
  det.hit_histories = detail::count_paths(
      histories, grid, det.counts,
      [&](const ProtonHistory& h) {
        return th.classifies_hit(h.wepl, rel_horizontal_angle(h), rel_vertical_angle(h));
      },
      threads);

  det.slice_thresholds.assign(static_cast<std::size_t>(grid.nz), 0.0);
  for (int iz = 0; iz < grid.nz; ++iz) {
    auto c = det.counts.slice(iz);
    const ArrayXXd m = c.cast<double>();
    if ((m <= 0.0).all()) {
      det.empty_slices.push_back(iz);  // hull stays empty in this slice
      continue;
    }
    const double mt = sm_threshold_for_slice(m, th.sm_gaussian_sigma);
    det.slice_thresholds[static_cast<std::size_t>(iz)] = mt;
    auto h = det.hull.slice(iz);
    h = (m > mt).cast<std::uint8_t>();
  }
  return det;
}

}  // namespace pct
