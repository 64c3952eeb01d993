#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "suspicion.hpp"
#include "taxonomy.hpp"

namespace zsat {

inline constexpr char kToolVersion[] = "2.0.0";

struct ScanWarning {
  std::string path;
  std::string message;

  bool operator==(const ScanWarning&) const = default;
};

struct ScanStats {
  uint64_t files_seen = 0;
  uint64_t dirs_seen = 0;
  uint64_t bytes_seen = 0;
  uint64_t files_matched = 0;
  uint64_t findings_count = 0;
  uint64_t elapsed_ms = 0;
  bool partial = false;
  std::vector<ScanWarning> warnings;

  bool operator==(const ScanStats&) const = default;
};

enum class Recommendation { HIGH, LOW };

const char* recommendation_name(Recommendation r);

// The serializable face of a Finding.
struct ReportFinding {
  std::string path;
  std::string family;
  std::string format;
  uint64_t size_bytes = 0;
  std::vector<Reason> reasons;
  std::optional<std::string> matched_keyword;

  bool operator==(const ReportFinding&) const = default;
};

struct TriageReport {
  std::string tool_version = kToolVersion;
  std::string taxonomy_digest;
  std::string root;
  ScanStats stats;
  std::vector<ReportFinding> findings;  // sorted by path
  std::map<std::string, uint64_t> per_family_counts;
  Recommendation recommendation = Recommendation::LOW;

  bool operator==(const TriageReport&) const = default;
};

enum class ReportFormat { JSON, TEXT };

Recommendation recommend(uint64_t findings_count, const Taxonomy& t);

ReportFinding to_report_finding(const Finding& f);

// Sorts findings, fills counts and stats.findings_count, applies the
// recommendation rule.
TriageReport build_report(std::string root, const Taxonomy& t, ScanStats stats,
                          std::vector<ReportFinding> findings);

std::string serialize(const TriageReport& r, ReportFormat format);

// Inverse of serialize(r, JSON). Throws ParseError on malformed input.
TriageReport deserialize_report(std::string_view json_text);

}  // namespace zsat
