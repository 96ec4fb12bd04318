#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pct/grid.hpp"
#include "pct/history.hpp"

namespace pct {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadMagicError : FormatError {
  using FormatError::FormatError;
};
struct VersionError : FormatError {
  using FormatError::FormatError;
};
struct TruncatedFileError : FormatError {
  TruncatedFileError(const std::string& what, std::size_t record)
      : FormatError(what), record_index(record) {}
  std::size_t record_index = 0;
};

// History file: "PCTH" | u32 version | u64 record count | records.
// Each record is the 12 float32 fields of ProtonHistory in declaration order,
// little-endian.
void write_histories(const std::filesystem::path& path,
                     std::span<const ProtonHistory> histories);
std::vector<ProtonHistory> read_histories(const std::filesystem::path& path);

// Volume container: "PCTV" | u32 version | u8 payload kind |
// u32 dims[3] | f64 voxel sizes[3] | f64 origin[3] | packed payload.
// Payload kinds: 1 = u8 mask, 2 = u32 counts, 3 = f64 RSP.
void write_volume(const std::filesystem::path& path, const HullMask& mask);
void write_volume(const std::filesystem::path& path, const CountVolume& counts);
void write_volume(const std::filesystem::path& path, const RspGrid& rsp);
HullMask read_mask(const std::filesystem::path& path);
CountVolume read_counts(const std::filesystem::path& path);
RspGrid read_rsp(const std::filesystem::path& path);

}  // namespace pct
