#include "pct/filters.hpp"

#include <cmath>
#include <vector>

namespace pct {

namespace {

// Zero-padded separable pass along the first dimension with the given taps.
ArrayXXd convolve_rows(const Eigen::Ref<const ArrayXXd>& in,
                       const std::vector<double>& taps) {
  const int radius = static_cast<int>(taps.size() / 2);
  const Eigen::Index nr = in.rows(), nc = in.cols();
  ArrayXXd out = ArrayXXd::Zero(nr, nc);
  for (Eigen::Index c = 0; c < nc; ++c)
    for (Eigen::Index r = 0; r < nr; ++r) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const Eigen::Index rr = r + k;
        if (rr < 0 || rr >= nr) continue;
        acc += taps[k + radius] * in(rr, c);
      }
      out(r, c) = acc;
    }
  return out;
}

ArrayXXd separable_filter(const Eigen::Ref<const ArrayXXd>& in,
                          const std::vector<double>& taps) {
  return convolve_rows(convolve_rows(in, taps).transpose(), taps).transpose();
}

}  // namespace

ArrayXXd average_filter_5x5(const Eigen::Ref<const ArrayXXd>& in) {
  const double w = 1.0 / 5.0;
  ArrayXXd out = separable_filter(in, {w, w, w, w, w});
  return out;
}

ArrayXXd gaussian_blur(const Eigen::Ref<const ArrayXXd>& in, double sigma) {
  if (sigma <= 0.0) return in;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double norm = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    taps[k + radius] = std::exp(-0.5 * (k * k) / (sigma * sigma));
    norm += taps[k + radius];
  }
  for (double& t : taps) t /= norm;
  return separable_filter(in, taps);
}

void sobel_gradients(const Eigen::Ref<const ArrayXXd>& in, ArrayXXd& gx, ArrayXXd& gy) {
  const Eigen::Index nr = in.rows(), nc = in.cols();
  gx = ArrayXXd::Zero(nr, nc);
  gy = ArrayXXd::Zero(nr, nc);
  auto px = [&](Eigen::Index r, Eigen::Index c) -> double {
    if (r < 0 || r >= nr || c < 0 || c >= nc) return 0.0;
    return in(r, c);
  };
  for (Eigen::Index c = 0; c < nc; ++c)
    for (Eigen::Index r = 0; r < nr; ++r) {
      gx(r, c) = (px(r + 1, c - 1) + 2.0 * px(r + 1, c) + px(r + 1, c + 1)) -
                 (px(r - 1, c - 1) + 2.0 * px(r - 1, c) + px(r - 1, c + 1));
      gy(r, c) = (px(r - 1, c + 1) + 2.0 * px(r, c + 1) + px(r + 1, c + 1)) -
                 (px(r - 1, c - 1) + 2.0 * px(r, c - 1) + px(r + 1, c - 1));
    }
}

}  // namespace pct
