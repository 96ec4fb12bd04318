#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pct/binning.hpp"
#include "pct/phantom.hpp"
#include "pct/simulator.hpp"
#include "pct/thresholds.hpp"

namespace pct {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Plain `key = value` text: one pair per line, '#' starts a comment, keys may
/// repeat (region lists). Values keep internal whitespace.
class KeyValueFile {
 public:
  static KeyValueFile parse_file(const std::filesystem::path& path);
  static KeyValueFile parse_string(const std::string& text, const std::string& name = "<string>");

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  const std::vector<std::string>& values(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;  // whitespace-separated

  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::map<std::string, std::vector<std::string>> entries_;
};

/// Phantom spec file schema (all lengths mm, angles deg):
///   nx, ny, nz, voxel_size_x, voxel_size_y, slice_thickness, origin = x y z
///   region = cx cy semi_a semi_b rotation_deg rsp z_first z_last priority
PhantomSpec load_phantom_spec(const std::filesystem::path& path);
PhantomSpec phantom_from_keyvalues(const KeyValueFile& kv, const std::string& prefix = "");

/// Scan config schema: keys mirror ScanConfig fields (see configs/).
ScanConfig scan_from_keyvalues(const KeyValueFile& kv, const std::string& prefix = "");
BinningConfig binning_from_keyvalues(const KeyValueFile& kv, const std::string& prefix = "");
AlgorithmThresholds thresholds_from_keyvalues(const KeyValueFile& kv,
                                              const std::string& prefix = "");
GridSpec grid_from_keyvalues(const KeyValueFile& kv, const std::string& prefix = "");

}  // namespace pct
