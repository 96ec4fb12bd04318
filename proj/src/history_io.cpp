#include "pct/history_io.hpp"

#include <cstdio>
#include <cstring>
#include <memory>

namespace pct {

namespace {

constexpr char kHistoryMagic[4] = {'P', 'C', 'T', 'H'};
constexpr char kVolumeMagic[4] = {'P', 'C', 'T', 'V'};
constexpr std::uint32_t kVersion = 1;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  return f;
}

void write_raw(std::FILE* f, const void* data, std::size_t bytes,
               const std::filesystem::path& path) {
  if (bytes && std::fwrite(data, 1, bytes, f) != bytes)
    throw IoError("short write to '" + path.string() + "'");
}

template <typename T>
void write_pod(std::FILE* f, const T& v, const std::filesystem::path& path) {
  write_raw(f, &v, sizeof(T), path);
}

std::size_t read_raw(std::FILE* f, void* data, std::size_t bytes) {
  return std::fread(data, 1, bytes, f);
}

template <typename T>
bool read_pod(std::FILE* f, T& v) {
  return read_raw(f, &v, sizeof(T)) == sizeof(T);
}

void read_header(std::FILE* f, const char expect_magic[4],
                 const std::filesystem::path& path) {
  char magic[4];
  if (read_raw(f, magic, 4) != 4 || std::memcmp(magic, expect_magic, 4) != 0)
    throw BadMagicError("'" + path.string() + "' is not a recognized file (bad magic)");
  std::uint32_t version = 0;
  if (!read_pod(f, version))
    throw TruncatedFileError("'" + path.string() + "' truncated in header", 0);
  if (version != kVersion)
    throw VersionError("'" + path.string() + "' has unsupported format version " +
                       std::to_string(version));
}

}  // namespace

void write_histories(const std::filesystem::path& path,
                     std::span<const ProtonHistory> histories) {
  auto f = open_file(path, "wb");
  write_raw(f.get(), kHistoryMagic, 4, path);
  write_pod(f.get(), kVersion, path);
  const std::uint64_t count = histories.size();
  write_pod(f.get(), count, path);
  write_raw(f.get(), histories.data(), histories.size_bytes(), path);
}

std::vector<ProtonHistory> read_histories(const std::filesystem::path& path) {
  auto f = open_file(path, "rb");
  read_header(f.get(), kHistoryMagic, path);
  std::uint64_t count = 0;
  if (!read_pod(f.get(), count))
    throw TruncatedFileError("'" + path.string() + "' truncated in header", 0);
  std::vector<ProtonHistory> out(count);
  const std::size_t want = count * sizeof(ProtonHistory);
  const std::size_t got = read_raw(f.get(), out.data(), want);
  if (got != want) {
    const std::size_t complete = got / sizeof(ProtonHistory);
    throw TruncatedFileError("'" + path.string() + "' truncated in record " +
                                 std::to_string(complete) + " of " + std::to_string(count),
                             complete);
  }
  return out;
}

namespace {

template <typename T>
void write_volume_impl(const std::filesystem::path& path, const Volume<T>& vol,
                       std::uint8_t kind) {
  auto f = open_file(path, "wb");
  write_raw(f.get(), kVolumeMagic, 4, path);
  write_pod(f.get(), kVersion, path);
  write_pod(f.get(), kind, path);
  const GridSpec& g = vol.grid();
  const std::uint32_t dims[3] = {static_cast<std::uint32_t>(g.nx),
                                 static_cast<std::uint32_t>(g.ny),
                                 static_cast<std::uint32_t>(g.nz)};
  const double sizes[3] = {g.voxel_size_x, g.voxel_size_y, g.slice_thickness};
  const double origin[3] = {g.origin.x(), g.origin.y(), g.origin.z()};
  write_raw(f.get(), dims, sizeof(dims), path);
  write_raw(f.get(), sizes, sizeof(sizes), path);
  write_raw(f.get(), origin, sizeof(origin), path);
  write_raw(f.get(), vol.data(), vol.size() * sizeof(T), path);
}

template <typename T>
Volume<T> read_volume_impl(const std::filesystem::path& path, std::uint8_t want_kind) {
  auto f = open_file(path, "rb");
  read_header(f.get(), kVolumeMagic, path);
  std::uint8_t kind = 0;
  std::uint32_t dims[3];
  double sizes[3];
  double origin[3];
  if (!read_pod(f.get(), kind) || read_raw(f.get(), dims, sizeof(dims)) != sizeof(dims) ||
      read_raw(f.get(), sizes, sizeof(sizes)) != sizeof(sizes) ||
      read_raw(f.get(), origin, sizeof(origin)) != sizeof(origin))
    throw TruncatedFileError("'" + path.string() + "' truncated in header", 0);
  if (kind != want_kind)
    throw FormatError("'" + path.string() + "' holds payload kind " +
                      std::to_string(kind) + ", expected " + std::to_string(want_kind));
  GridSpec g;
  g.nx = static_cast<int>(dims[0]);
  g.ny = static_cast<int>(dims[1]);
  g.nz = static_cast<int>(dims[2]);
  g.voxel_size_x = sizes[0];
  g.voxel_size_y = sizes[1];
  g.slice_thickness = sizes[2];
  g.origin = {origin[0], origin[1], origin[2]};
  g.validate();
  Volume<T> vol(g);
  const std::size_t want = vol.size() * sizeof(T);
  if (read_raw(f.get(), vol.data(), want) != want)
    throw TruncatedFileError("'" + path.string() + "' truncated in payload", 0);
  return vol;
}

}  // namespace

void write_volume(const std::filesystem::path& path, const HullMask& mask) {
  write_volume_impl(path, mask, 1);
}
void write_volume(const std::filesystem::path& path, const CountVolume& counts) {
  write_volume_impl(path, counts, 2);
}
void write_volume(const std::filesystem::path& path, const RspGrid& rsp) {
  write_volume_impl(path, rsp, 3);
}
HullMask read_mask(const std::filesystem::path& path) {
  return read_volume_impl<std::uint8_t>(path, 1);
}
CountVolume read_counts(const std::filesystem::path& path) {
  return read_volume_impl<std::uint32_t>(path, 2);
}
RspGrid read_rsp(const std::filesystem::path& path) {
  return read_volume_impl<double>(path, 3);
}

}  // namespace pct
