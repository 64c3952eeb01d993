#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "filters.hpp"
#include "taxonomy.hpp"

namespace zsat {

// Canonical order; findings list reasons in this order, deduplicated.
enum class Reason {
  SIZE_THRESHOLD,
  KEYWORD_MATCH,
  LOCATION_HINT,
  EXTENSION_MISMATCH,
  GROUPED,
  ISOLATED,
};

const char* reason_name(Reason r);
std::optional<Reason> reason_from_name(std::string_view name);

struct Finding {
  FileRecord record;
  std::vector<Reason> reasons;
  std::optional<std::string> matched_keyword;  // set iff KEYWORD_MATCH present

  bool operator==(const Finding&) const = default;
};

using FamilyOverrides = std::map<std::string, bool>;

// Taxonomy switch unless overridden (the --enable-music path).
bool family_enabled(const Taxonomy& t, std::string_view family_name,
                    const FamilyOverrides* overrides = nullptr);

// None when the record's family is unknown or disabled; otherwise a Finding
// when at least one criterion fires.
std::optional<Finding> evaluate(const FileRecord& record, const Taxonomy& t, bool grouped,
                                bool isolated, const FamilyOverrides* overrides = nullptr);

bool size_alone_sufficient(const FileRecord& record, const Taxonomy& t,
                           const FamilyOverrides* overrides = nullptr);

}  // namespace zsat
