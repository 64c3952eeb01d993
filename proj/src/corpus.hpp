#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "suspicion.hpp"

namespace zsat {

struct CorpusSpec {
  uint64_t seed = 0;
  uint64_t innocuous_files = 0;
  uint64_t planted_images = 0;
  uint64_t planted_videos = 0;
  uint64_t planted_keyword_files = 0;
  uint64_t planted_mismatch_files = 0;
  uint64_t directories = 1;  // counts the corpus root itself
  std::string keyword = "secret";

  bool operator==(const CorpusSpec&) const = default;
};

struct ManifestEntry {
  std::string rel_path;
  std::string expected_family;  // "unknown" for innocuous files
  std::vector<Reason> expected_reasons;
  bool is_planted = false;

  bool operator==(const ManifestEntry&) const = default;
};

struct Manifest {
  CorpusSpec spec;
  std::vector<ManifestEntry> files;  // sorted by rel_path

  bool operator==(const Manifest&) const = default;
};

// Builds the tree under out_dir (which must be absent or empty), writes the
// manifest beside it, and returns it. Same spec, same bytes, every time.
Manifest generate(const CorpusSpec& spec, const std::filesystem::path& out_dir);

// Where generate() records the ground truth: sibling of the corpus root, so
// the scanned tree stays clean.
std::filesystem::path manifest_path_for(const std::filesystem::path& out_dir);

void write_manifest(const Manifest& m, const std::filesystem::path& path);
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace zsat
