#pragma once

#include <filesystem>

#include <Eigen/Dense>

namespace pct {

/// Scaling for 8-bit export: max_value > 0 divides by that fixed value,
/// otherwise the slice maximum is used (an all-nonpositive slice maps to 0).
struct ImageNormalization {
  double max_value = 0.0;
};

/// Writes one slice as a binary 8-bit PGM (P5). Pixel (ix, iy) of the slice
/// lands at column ix, row iy; each byte is round(255 * clamped normalized
/// value), identical on every platform.
void export_slice_image(const Eigen::Ref<const Eigen::ArrayXXd>& slice,
                        const std::filesystem::path& path,
                        ImageNormalization norm = {});

}  // namespace pct
