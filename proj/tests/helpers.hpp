#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "filters.hpp"

namespace zsat::testutil {

// First 64 bytes of reference-encoder output (verified against real files),
// plus hand-assembled container headers for formats the encoders here could
// not produce. Only the leading bytes matter to detection.
inline constexpr char kJpgHex[] =
    "FFD8FFE000104A46494600010100000100010000FFDB004300080606070605080707070909080A0C140D0C0B"
    "0B0C1912130F141D1A1F1E1D1A1C1C20242E2720";
inline constexpr char kPngHex[] =
    "89504E470D0A1A0A0000000D49484452000000080000000808020000004B6D29DC000000144944415478"
    "9C63AC903BC1800D3061151DB41200157B016E5CB9AC";
inline constexpr char kGifHex[] =
    "47494638376108000800810000781EC80000000000000000002C000000000800080000080F0001081C48B0A0"
    "C18308132A4C1810003B";
inline constexpr char kBmpHex[] =
    "424DF600000000000000360000002800000008000000080000000100180000000000C0000000C40E0000C40E"
    "00000000000000000000C81E78C81E78C81E78C8";
inline constexpr char kAviHex[] =
    "52494646DA180000415649204C495354EC1100006864726C6176696838000000400D0300C003000000000000"
    "1009000003000000000000000100000000001000";
inline constexpr char kMkvHex[] =
    "1A45DFA39F4286810142F7810142F2810442F381084282886D6174726F736B614287810442858102";
inline constexpr char kAsfHex[] =
    "3026B2758E66CF11A6D900AA0062CE6C1E000000000000000100000001021100";
inline constexpr char kMpegPsHex[] = "000001BA44000400040100000303F8";
inline constexpr char kMpegEsHex[] = "000001B31E028020";
inline constexpr char kOggHex[] =
    "4F6767530002000000000000000000001234567800000000AABBCCDD";
inline constexpr char kMp3Id3Hex[] = "49443303000000000000FFFB9000";
inline constexpr char kMp3SyncHex[] = "FFFB90000000000000000000";

inline std::vector<uint8_t> from_hex(std::string_view hex) {
  std::vector<uint8_t> out;
  auto nibble = [](char c) -> uint8_t {
    if (c >= '0' && c <= '9') return uint8_t(c - '0');
    if (c >= 'A' && c <= 'F') return uint8_t(c - 'A' + 10);
    if (c >= 'a' && c <= 'f') return uint8_t(c - 'a' + 10);
    throw std::invalid_argument("bad hex in test constant");
  };
  for (size_t i = 0; i + 1 < hex.size(); i += 2)
    out.push_back(uint8_t(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
  return out;
}

// Header bytes zero-padded to a total size.
inline std::vector<uint8_t> media_bytes(std::string_view hex, size_t total) {
  std::vector<uint8_t> out = from_hex(hex);
  if (out.size() < total) out.resize(total, 0);
  return out;
}

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "zsat_test_XXXXXX").string();
    char* made = ::mkdtemp(tmpl.data());
    if (!made) throw std::runtime_error("mkdtemp failed");
    path = made;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline void write_file(const std::filesystem::path& p, const std::vector<uint8_t>& bytes) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw std::runtime_error("test file write failed: " + p.string());
}

inline void write_file(const std::filesystem::path& p, std::string_view text) {
  write_file(p, std::vector<uint8_t>(text.begin(), text.end()));
}

// A record as the scanner would build it; format "unknown" means undetected.
inline FileRecord rec(std::string rel_path, std::string family, std::string format,
                      uint64_t size = 0, bool mismatch = false) {
  FileRecord r;
  r.rel_path = std::move(rel_path);
  auto slash = r.rel_path.rfind('/');
  r.dir_path = slash == std::string::npos ? "" : r.rel_path.substr(0, slash);
  r.size_bytes = size;
  auto dot = r.rel_path.rfind('.');
  r.extension = (dot == std::string::npos || dot < slash + 1) ? "" : r.rel_path.substr(dot + 1);
  r.detected.family_name = std::move(family);
  r.detected.format_name = std::move(format);
  r.detected.mismatch = mismatch;
  r.detected.via =
      r.detected.format_name == "unknown" ? DetectVia::NONE : DetectVia::SIGNATURE;
  return r;
}

}  // namespace zsat::testutil
