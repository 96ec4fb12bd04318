#include "pct/binning.hpp"

#include <cmath>

namespace pct {

LinePath BinGrid::center_path(const BinKey& k, double half_length) const {
  const auto it = bins_.find(k);
  const double angle_deg =
      it != bins_.end() ? it->second.stats.mean_angle_deg
                        : (k.ia + 0.5) * config_.angular_bin_deg;
  const double phi = angle_deg * M_PI / 180.0;
  const Eigen::Vector3d beam(std::cos(phi), std::sin(phi), 0.0);
  const Eigen::Vector3d lateral(-std::sin(phi), std::cos(phi), 0.0);
  const Eigen::Vector3d offset =
      lateral_center(k) * lateral + Eigen::Vector3d(0, 0, vertical_center(k));
  return {offset - half_length * beam, offset + half_length * beam};
}

namespace {

struct Accum {
  std::size_t n = 0;
  double sum_angle = 0.0;
  double sum[3] = {0, 0, 0};
  double sumsq[3] = {0, 0, 0};

  void add(const ProtonHistory& h) {
    ++n;
    sum_angle += h.projection_angle;
    const double q[3] = {h.wepl, rel_horizontal_angle(h), rel_vertical_angle(h)};
    for (int i = 0; i < 3; ++i) {
      sum[i] += q[i];
      sumsq[i] += q[i] * q[i];
    }
  }

  BinStats finalize() const {
    BinStats s;
    s.count = static_cast<std::uint32_t>(n);
    if (n == 0) return s;
    const double inv = 1.0 / static_cast<double>(n);
    s.mean_angle_deg = sum_angle * inv;
    double mean[3], stdev[3];
    for (int i = 0; i < 3; ++i) {
      mean[i] = sum[i] * inv;
      double var = 0.0;
      if (n >= 2)
        var = std::max(0.0, (sumsq[i] - sum[i] * mean[i]) / static_cast<double>(n - 1));
      stdev[i] = std::sqrt(var);
    }
    s.mean_wepl = mean[0];
    s.std_wepl = stdev[0];
    s.mean_rel_h = mean[1];
    s.std_rel_h = stdev[1];
    s.mean_rel_v = mean[2];
    s.std_rel_v = stdev[2];
    return s;
  }
};

}  // namespace

BinGrid bin_histories(std::span<const ProtonHistory> histories,
                      const BinningConfig& cfg) {
  BinGrid grid(cfg);
  std::map<BinKey, Accum> acc;
  for (std::uint32_t i = 0; i < histories.size(); ++i) {
    const BinKey key = grid.key_for(histories[i]);
    acc[key].add(histories[i]);
    grid.bins()[key].members.push_back(i);
  }
  for (auto& [key, bin] : grid.bins()) bin.stats = acc[key].finalize();
  return grid;
}

CutResult apply_data_cuts(std::span<const ProtonHistory> histories,
                          const BinGrid& bins) {
  const double k = bins.config().cut_sigma;
  std::vector<bool> keep(histories.size(), true);
  std::size_t removed = 0;

  for (const auto& [key, bin] : bins.bins()) {
    if (bin.members.size() < 2) continue;  // std undefined, exempt
    const BinStats& s = bin.stats;
    for (const std::uint32_t idx : bin.members) {
      const ProtonHistory& h = histories[idx];
      const bool out_wepl = s.std_wepl > 0.0 && std::abs(h.wepl - s.mean_wepl) > k * s.std_wepl;
      const bool out_h =
          s.std_rel_h > 0.0 && std::abs(rel_horizontal_angle(h) - s.mean_rel_h) > k * s.std_rel_h;
      const bool out_v =
          s.std_rel_v > 0.0 && std::abs(rel_vertical_angle(h) - s.mean_rel_v) > k * s.std_rel_v;
      if (out_wepl || out_h || out_v) {
        keep[idx] = false;
        ++removed;
      }
    }
  }

  CutResult result;
  result.removed = removed;
  result.kept.reserve(histories.size() - removed);
  for (std::size_t i = 0; i < histories.size(); ++i)
    if (keep[i]) result.kept.push_back(histories[i]);
  result.bins = bin_histories(result.kept, bins.config());
  return result;
}

}  // namespace pct
