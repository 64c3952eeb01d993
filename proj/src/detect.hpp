#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taxonomy.hpp"

namespace zsat {

enum class DetectVia { SIGNATURE, EXTENSION_ONLY, NONE };

const char* via_name(DetectVia via);

struct DetectedFormat {
  std::string format_name = "unknown";
  std::string family_name = "unknown";
  bool mismatch = false;
  DetectVia via = DetectVia::NONE;

  bool operator==(const DetectedFormat&) const = default;
};

// Precompiled signature matcher. Signatures of a format that share an offset
// are alternatives (any may match); distinct offsets are parts that must all
// match. The taxonomy must outlive the detector.
class Detector {
 public:
  explicit Detector(const Taxonomy& t);

  DetectedFormat detect(std::span<const uint8_t> header, std::string_view extension) const;

  const Taxonomy& taxonomy() const { return taxonomy_; }

 private:
  struct Part {
    uint32_t offset = 0;
    std::vector<std::vector<uint8_t>> alternatives;
  };
  struct Entry {
    const Format* format = nullptr;
    const Family* family = nullptr;
    std::vector<Part> parts;
  };

  // Returns the matched byte count, or -1 when some part has no matching
  // alternative.
  static int match_score(const Entry& entry, std::span<const uint8_t> header);
  // True when the header is too short to test any alternative of any part.
  static bool uncheckable(const Entry& entry, std::span<const uint8_t> header);

  const Taxonomy& taxonomy_;
  std::vector<Entry> entries_;
};

// One-shot convenience; builds a Detector per call.
DetectedFormat detect(std::span<const uint8_t> header, std::string_view extension,
                      const Taxonomy& t);

// First min(size, 64) bytes, opened read-only. Throws IoError on failure.
std::vector<uint8_t> read_header(const std::filesystem::path& path);

// Lowercased final extension without the dot ("IMG.JPG" -> "jpg"); empty when
// the name has none.
std::string extension_of(std::string_view filename);

}  // namespace zsat
