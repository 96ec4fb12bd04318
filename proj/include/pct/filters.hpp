#pragma once

#include <Eigen/Dense>

namespace pct {

using Eigen::ArrayXXd;

/// 5x5 box mean with zero padding: every output is the window sum divided by
/// 25, including at the borders.
ArrayXXd average_filter_5x5(const Eigen::Ref<const ArrayXXd>& in);

/// Separable Gaussian blur with zero padding; sigma <= 0 returns the input
/// unchanged. Kernel radius is ceil(3 sigma).
ArrayXXd gaussian_blur(const Eigen::Ref<const ArrayXXd>& in, double sigma);

/// 3x3 Sobel gradients with zero padding.
void sobel_gradients(const Eigen::Ref<const ArrayXXd>& in, ArrayXXd& gx, ArrayXXd& gy);

}  // namespace pct
