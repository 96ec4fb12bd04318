#pragma once

#include <cmath>
#include <stdexcept>

namespace pct {

/// Tunable cutoffs shared by the hull-detection algorithms. The WEPL cutoffs
/// classify protons as having missed (wepl below the miss cutoff) or crossed
/// (wepl above the hit cutoff) the object; the optional angle tests are off by
/// default.
struct AlgorithmThresholds {
  double wepl_miss_cutoff_mm = 1.0;
  double wepl_hit_cutoff_mm = 5.0;
  bool angle_cutoffs_enabled = false;
  double angle_miss_cutoff_rad = 0.0;
  double angle_hit_cutoff_rad = 0.0;
  int msc_count_diff_threshold = 50;  // minimum neighbor count difference
  double sc_filter_threshold = 0.4;   // re-binarization level after the 5x5 mean
  double fbp_rsp_threshold = 0.6;
  double sm_gaussian_sigma = 1.4;  // smoothing used by the edge-based threshold pick

  void validate() const {
    if (wepl_miss_cutoff_mm < 0.0 || wepl_hit_cutoff_mm < 0.0)
      throw std::invalid_argument("AlgorithmThresholds: WEPL cutoffs must be >= 0");
    if (angle_miss_cutoff_rad < 0.0 || angle_hit_cutoff_rad < 0.0)
      throw std::invalid_argument("AlgorithmThresholds: angle cutoffs must be >= 0");
    if (!(sc_filter_threshold > 0.0) || !(sc_filter_threshold < 1.0))
      throw std::invalid_argument(
          "AlgorithmThresholds: sc_filter_threshold must lie in (0, 1)");
    if (msc_count_diff_threshold < 0)
      throw std::invalid_argument("AlgorithmThresholds: negative count threshold");
    if (sm_gaussian_sigma < 0.0)
      throw std::invalid_argument("AlgorithmThresholds: negative smoothing sigma");
  }

  /// Missed-object test: low WEPL, and (when enabled) small direction change
  /// on both axes.
  bool classifies_missed(double wepl, double rel_h, double rel_v) const {
    if (!(wepl < wepl_miss_cutoff_mm)) return false;
    if (!angle_cutoffs_enabled) return true;
    return std::abs(rel_h) < angle_miss_cutoff_rad &&
           std::abs(rel_v) < angle_miss_cutoff_rad;
  }

  /// Crossed-object test: high WEPL, or (when enabled) a large direction
  /// change on either axis.
  bool classifies_hit(double wepl, double rel_h, double rel_v) const {
    if (wepl > wepl_hit_cutoff_mm) return true;
    if (!angle_cutoffs_enabled) return false;
    return std::abs(rel_h) > angle_hit_cutoff_rad ||
           std::abs(rel_v) > angle_hit_cutoff_rad;
  }
};

}  // namespace pct
