#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pct/grid.hpp"
#include "pct/history.hpp"

namespace pct {

struct BinningConfig {
  double angular_bin_deg = 4.0;
  double lateral_bin_mm = 1.0;
  double vertical_bin_mm = 5.0;
  double cut_sigma = 3.0;

  void validate() const {
    if (!(angular_bin_deg > 0.0) || !(lateral_bin_mm > 0.0) || !(vertical_bin_mm > 0.0))
      throw std::invalid_argument("BinningConfig: bin widths must be > 0");
    if (!(cut_sigma > 0.0)) throw std::invalid_argument("BinningConfig: cut_sigma must be > 0");
  }
};

/// Floor-quantized (angle, lateral, vertical) bin coordinates.
struct BinKey {
  int ia = 0;
  int il = 0;
  int iv = 0;

  friend bool operator==(const BinKey& a, const BinKey& b) {
    return a.ia == b.ia && a.il == b.il && a.iv == b.iv;
  }
  friend bool operator<(const BinKey& a, const BinKey& b) {
    if (a.ia != b.ia) return a.ia < b.ia;
    if (a.il != b.il) return a.il < b.il;
    return a.iv < b.iv;
  }
};

struct BinStats {
  std::uint32_t count = 0;
  double mean_angle_deg = 0.0;
  double mean_wepl = 0.0, std_wepl = 0.0;
  double mean_rel_h = 0.0, std_rel_h = 0.0;
  double mean_rel_v = 0.0, std_rel_v = 0.0;
};

struct Bin {
  BinStats stats;
  std::vector<std::uint32_t> members;  // indices into the binned history span
};

/// Histories grouped into (angle, lateral, vertical) intervals with per-bin
/// statistics. Bins are kept in deterministic key order.
class BinGrid {
 public:
  BinGrid() = default;
  explicit BinGrid(const BinningConfig& cfg) : config_(cfg) { cfg.validate(); }

  const BinningConfig& config() const { return config_; }
  const std::map<BinKey, Bin>& bins() const { return bins_; }
  std::map<BinKey, Bin>& bins() { return bins_; }
  bool empty() const { return bins_.empty(); }
  std::size_t size() const { return bins_.size(); }

  BinKey key_for(const ProtonHistory& h) const {
    return BinKey{
        static_cast<int>(std::floor(h.projection_angle / config_.angular_bin_deg)),
        static_cast<int>(std::floor(lateral_displacement(h) / config_.lateral_bin_mm)),
        static_cast<int>(
            std::floor(h.vertical_displacement / config_.vertical_bin_mm))};
  }

  double lateral_center(const BinKey& k) const {
    return (k.il + 0.5) * config_.lateral_bin_mm;
  }
  double vertical_center(const BinKey& k) const {
    return (k.iv + 0.5) * config_.vertical_bin_mm;
  }
  double vertical_low(const BinKey& k) const { return k.iv * config_.vertical_bin_mm; }
  double vertical_high(const BinKey& k) const {
    return (k.iv + 1) * config_.vertical_bin_mm;
  }

  /// Straight line representing the bin: a parallel ray at the bin's mean
  /// projection angle through the bin's lateral/vertical center, spanning
  /// +-half_length along the beam axis. (Projection angles sit on bin edges
  /// under floor binning, so the member mean pins the representative angle.)
  LinePath center_path(const BinKey& k, double half_length) const;

 private:
  BinningConfig config_;
  std::map<BinKey, Bin> bins_;

  friend BinGrid bin_histories(std::span<const ProtonHistory>, const BinningConfig&);
};

BinGrid bin_histories(std::span<const ProtonHistory> histories,
                      const BinningConfig& cfg);

struct CutResult {
  std::vector<ProtonHistory> kept;
  BinGrid bins;  // rebuilt over the surviving histories
  std::size_t removed = 0;
};

/// Removes every history that deviates from its bin mean by more than
/// cut_sigma standard deviations in WEPL, relative horizontal angle or
/// relative vertical angle. Single pass; bins with fewer than two members are
/// exempt. Surviving histories keep their bin assignment and the returned
/// BinGrid carries statistics recomputed over the survivors.
CutResult apply_data_cuts(std::span<const ProtonHistory> histories,
                          const BinGrid& bins);

}  // namespace pct
