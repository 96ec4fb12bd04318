#include "pct/config.hpp"

#include <fstream>
#include <sstream>

namespace pct {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

KeyValueFile KeyValueFile::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path.string());
}

KeyValueFile KeyValueFile::parse_string(const std::string& text, const std::string& name) {
  KeyValueFile kv;
  kv.name_ = name;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(name + ":" + std::to_string(line_no) + ": empty key");
    kv.entries_[key].push_back(value);
  }
  return kv;
}

const std::vector<std::string>& KeyValueFile::values(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw ConfigError(name_ + ": missing required key '" + key + "'");
  return it->second;
}

std::string KeyValueFile::get_string(const std::string& key) const {
  return values(key).back();
}
std::string KeyValueFile::get_string(const std::string& key,
                                     const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double KeyValueFile::get_double(const std::string& key) const {
  const std::string& v = get_string(key);
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (trim(v.substr(pos)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError(name_ + ": key '" + key + "' is not a number: '" + v + "'");
}
double KeyValueFile::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int KeyValueFile::get_int(const std::string& key) const {
  const double d = get_double(key);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw ConfigError(name_ + ": key '" + key + "' is not an integer");
  return i;
}
int KeyValueFile::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::uint64_t KeyValueFile::get_uint64(const std::string& key,
                                       std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = get_string(key);
  try {
    std::size_t pos = 0;
    const unsigned long long u = std::stoull(v, &pos);
    if (trim(v.substr(pos)).empty()) return u;
  } catch (const std::exception&) {
  }
  throw ConfigError(name_ + ": key '" + key + "' is not an unsigned integer: '" + v + "'");
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key);
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(name_ + ": key '" + key + "' is not a boolean: '" + v + "'");
}

std::vector<double> KeyValueFile::get_doubles(const std::string& key) const {
  std::istringstream in(get_string(key));
  std::vector<double> out;
  double d;
  while (in >> d) out.push_back(d);
  if (!in.eof())
    throw ConfigError(name_ + ": key '" + key + "' holds non-numeric items");
  return out;
}

PhantomSpec phantom_from_keyvalues(const KeyValueFile& kv, const std::string& prefix) {
  PhantomSpec spec;
  spec.grid = grid_from_keyvalues(kv, prefix);
  if (kv.has(prefix + "region")) {
    for (const std::string& line : kv.values(prefix + "region")) {
      std::istringstream in(line);
      EllipseRegion r;
      double cx, cy, rot_deg;
      if (!(in >> cx >> cy >> r.semi_axis_a >> r.semi_axis_b >> rot_deg >> r.rsp >>
            r.z_first >> r.z_last >> r.priority))
        throw ConfigError(kv.name() + ": bad region line '" + line + "'");
      r.center = {cx, cy};
      r.rotation = rot_deg * M_PI / 180.0;
      r.validate();
      spec.regions.push_back(r);
    }
  }
  return spec;
}

PhantomSpec load_phantom_spec(const std::filesystem::path& path) {
  return phantom_from_keyvalues(KeyValueFile::parse_file(path));
}

GridSpec grid_from_keyvalues(const KeyValueFile& kv, const std::string& prefix) {
  GridSpec g;
  g.nx = kv.get_int(prefix + "nx");
  g.ny = kv.get_int(prefix + "ny");
  g.nz = kv.get_int(prefix + "nz");
  g.voxel_size_x = kv.get_double(prefix + "voxel_size_x", 1.0);
  g.voxel_size_y = kv.get_double(prefix + "voxel_size_y", 1.0);
  g.slice_thickness = kv.get_double(prefix + "slice_thickness", 1.0);
  if (kv.has(prefix + "origin")) {
    const auto o = kv.get_doubles(prefix + "origin");
    if (o.size() != 3)
      throw ConfigError(kv.name() + ": '" + prefix + "origin' needs three values");
    g.origin = {o[0], o[1], o[2]};
  } else {
    // default: grid centered on the isocenter
    g.origin = -0.5 * g.extent();
  }
  g.validate();
  return g;
}

ScanConfig scan_from_keyvalues(const KeyValueFile& kv, const std::string& prefix) {
  ScanConfig cfg;
  cfg.num_projections = kv.get_int(prefix + "num_projections", cfg.num_projections);
  cfg.angular_step_deg = kv.get_double(prefix + "angular_step_deg", cfg.angular_step_deg);
  cfg.protons_per_projection =
      kv.get_int(prefix + "protons_per_projection", cfg.protons_per_projection);
  cfg.beam_label = kv.get_string(prefix + "beam_label", cfg.beam_label);
  cfg.fov_lateral_mm = kv.get_double(prefix + "fov_lateral_mm", cfg.fov_lateral_mm);
  cfg.vertical_min_mm = kv.get_double(prefix + "vertical_min_mm", cfg.vertical_min_mm);
  cfg.vertical_max_mm = kv.get_double(prefix + "vertical_max_mm", cfg.vertical_max_mm);
  cfg.scan_radius_mm = kv.get_double(prefix + "scan_radius_mm", cfg.scan_radius_mm);
  cfg.scatter.sigma_displacement_mm = kv.get_double(
      prefix + "scatter_sigma_displacement_mm", cfg.scatter.sigma_displacement_mm);
  cfg.scatter.sigma_angle_rad =
      kv.get_double(prefix + "scatter_sigma_angle_rad", cfg.scatter.sigma_angle_rad);
  cfg.scatter.correlation =
      kv.get_double(prefix + "scatter_correlation", cfg.scatter.correlation);
  cfg.noise.sigma_base_mm =
      kv.get_double(prefix + "noise_sigma_base_mm", cfg.noise.sigma_base_mm);
  cfg.noise.sigma_slope = kv.get_double(prefix + "noise_sigma_slope", cfg.noise.sigma_slope);
  cfg.noise_enabled = kv.get_bool(prefix + "noise", cfg.noise_enabled);
  cfg.seed = kv.get_uint64(prefix + "seed", cfg.seed);
  cfg.validate();
  return cfg;
}

BinningConfig binning_from_keyvalues(const KeyValueFile& kv, const std::string& prefix) {
  BinningConfig cfg;
  cfg.angular_bin_deg = kv.get_double(prefix + "angular_bin_deg", cfg.angular_bin_deg);
  cfg.lateral_bin_mm = kv.get_double(prefix + "lateral_bin_mm", cfg.lateral_bin_mm);
  cfg.vertical_bin_mm = kv.get_double(prefix + "vertical_bin_mm", cfg.vertical_bin_mm);
  cfg.cut_sigma = kv.get_double(prefix + "cut_sigma", cfg.cut_sigma);
  cfg.validate();
  return cfg;
}

AlgorithmThresholds thresholds_from_keyvalues(const KeyValueFile& kv,
                                              const std::string& prefix) {
  AlgorithmThresholds th;
  th.wepl_miss_cutoff_mm =
      kv.get_double(prefix + "wepl_miss_cutoff_mm", th.wepl_miss_cutoff_mm);
  th.wepl_hit_cutoff_mm = kv.get_double(prefix + "wepl_hit_cutoff_mm", th.wepl_hit_cutoff_mm);
  th.angle_cutoffs_enabled =
      kv.get_bool(prefix + "angle_cutoffs_enabled", th.angle_cutoffs_enabled);
  th.angle_miss_cutoff_rad =
      kv.get_double(prefix + "angle_miss_cutoff_rad", th.angle_miss_cutoff_rad);
  th.angle_hit_cutoff_rad =
      kv.get_double(prefix + "angle_hit_cutoff_rad", th.angle_hit_cutoff_rad);
  th.msc_count_diff_threshold =
      kv.get_int(prefix + "msc_count_diff_threshold", th.msc_count_diff_threshold);
  th.sc_filter_threshold = kv.get_double(prefix + "sc_filter_threshold", th.sc_filter_threshold);
  th.fbp_rsp_threshold = kv.get_double(prefix + "fbp_rsp_threshold", th.fbp_rsp_threshold);
  th.sm_gaussian_sigma = kv.get_double(prefix + "sm_gaussian_sigma", th.sm_gaussian_sigma);
  th.validate();
  return th;
}

}  // namespace pct
