#include "pct/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "pct/history_io.hpp"

namespace pct {

void export_slice_image(const Eigen::Ref<const Eigen::ArrayXXd>& slice,
                        const std::filesystem::path& path, ImageNormalization norm) {
  const Eigen::Index w = slice.rows();
  const Eigen::Index h = slice.cols();
  double denom = norm.max_value;
  if (denom <= 0.0) denom = slice.maxCoeff();

  std::vector<unsigned char> payload(static_cast<std::size_t>(w) * h, 0);
  if (denom > 0.0) {
    for (Eigen::Index iy = 0; iy < h; ++iy)
      for (Eigen::Index ix = 0; ix < w; ++ix) {
        const double v = std::clamp(slice(ix, iy) / denom, 0.0, 1.0);
        payload[static_cast<std::size_t>(iy) * w + ix] =
            static_cast<unsigned char>(std::lround(255.0 * v));
      }
  }

  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  const std::string header =
      "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  bool ok = std::fwrite(header.data(), 1, header.size(), f) == header.size();
  ok = ok && std::fwrite(payload.data(), 1, payload.size(), f) == payload.size();
  std::fclose(f);
  if (!ok) throw IoError("short write to '" + path.string() + "'");
}

}  // namespace pct
