#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "report.hpp"
#include "suspicion.hpp"
#include "taxonomy.hpp"

namespace zsat {

struct ScanConfig {
  std::filesystem::path root;
  uint64_t budget_ms = 300000;  // five minutes
  uint32_t worker_count = 1;
  FamilyOverrides enabled_family_overrides;
};

// Full triage: traversal, detection, proximity analysis, suspicion.
// Throws IoError when root is missing or unlistable; per-file trouble
// degrades to warnings.
TriageReport scan(const ScanConfig& cfg, const Taxonomy& t);

// Same traversal and detection, no filtering: findings become a bare
// inventory (empty reasons) of every file with a known enabled family.
TriageReport scan_type_only(const ScanConfig& cfg, const Taxonomy& t);

namespace detail {

struct TraversalResult {
  std::vector<FileRecord> records;
  std::set<std::string> complete_dirs;  // dir rel_paths fully enumerated in budget
  ScanStats stats;                      // elapsed_ms left 0, findings_count left 0
};

TraversalResult traverse(const ScanConfig& cfg, const Taxonomy& t);

// Report assembly over a finished traversal; grouped/isolated only consider
// records whose directory was fully enumerated.
TriageReport assemble(const ScanConfig& cfg, const Taxonomy& t, TraversalResult tr,
                      bool type_only);

// True when rel_path sits at or under one of the configured prefixes
// (case-insensitive, component-anchored at the root).
bool excluded_by_prefix(const std::string& rel_path, const std::vector<std::string>& prefixes);

}  // namespace detail

}  // namespace zsat
