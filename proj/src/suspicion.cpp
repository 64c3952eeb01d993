#include "suspicion.hpp"

#include <filesystem>

namespace zsat {

namespace {

bool contains_ci(std::string_view haystack_lower, std::string_view needle) {
  return haystack_lower.find(to_lower(needle)) != std::string_view::npos;
}

}  // namespace

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::SIZE_THRESHOLD: return "SIZE_THRESHOLD";
    case Reason::KEYWORD_MATCH: return "KEYWORD_MATCH";
    case Reason::LOCATION_HINT: return "LOCATION_HINT";
    case Reason::EXTENSION_MISMATCH: return "EXTENSION_MISMATCH";
    case Reason::GROUPED: return "GROUPED";
    case Reason::ISOLATED: return "ISOLATED";
  }
  return "SIZE_THRESHOLD";
}

std::optional<Reason> reason_from_name(std::string_view name) {
  for (Reason r : {Reason::SIZE_THRESHOLD, Reason::KEYWORD_MATCH, Reason::LOCATION_HINT,
                   Reason::EXTENSION_MISMATCH, Reason::GROUPED, Reason::ISOLATED})
    if (name == reason_name(r)) return r;
  return std::nullopt;
}

bool family_enabled(const Taxonomy& t, std::string_view family_name,
                    const FamilyOverrides* overrides) {
  if (overrides) {
    auto it = overrides->find(std::string(family_name));
    if (it != overrides->end()) return it->second;
  }
  const Family* fam = find_family(t, family_name);
  return fam && fam->enabled;
}

std::optional<Finding> evaluate(const FileRecord& record, const Taxonomy& t, bool grouped,
                                bool isolated, const FamilyOverrides* overrides) {
  const std::string& family = record.detected.family_name;
  if (family == "unknown" || !family_enabled(t, family, overrides)) return std::nullopt;
  const Format* fmt = find_format(t, record.detected.format_name);
  if (!fmt) return std::nullopt;

  Finding f;
  f.record = record;

  if (record.size_bytes >= fmt->criteria.min_size_bytes)
    f.reasons.push_back(Reason::SIZE_THRESHOLD);

  const std::string stem =
      to_lower(std::filesystem::path(record.rel_path).stem().string());
  for (const auto& keyword : fmt->criteria.keywords) {
    if (!keyword.empty() && contains_ci(stem, keyword)) {
      f.reasons.push_back(Reason::KEYWORD_MATCH);
      f.matched_keyword = keyword;
      break;
    }
  }

  if (fmt->criteria.use_location_hints) {
    // Leading slash so anchored patterns like "/temp/" also hit at the root.
    const std::string path_lower = "/" + to_lower(record.rel_path);
    for (const auto& pattern : t.location_rules.hint_patterns) {
      if (!pattern.empty() && contains_ci(path_lower, pattern)) {
        f.reasons.push_back(Reason::LOCATION_HINT);
        break;
      }
    }
  }

  if (record.detected.mismatch) f.reasons.push_back(Reason::EXTENSION_MISMATCH);
  if (grouped) f.reasons.push_back(Reason::GROUPED);
  if (isolated) f.reasons.push_back(Reason::ISOLATED);

  if (f.reasons.empty()) return std::nullopt;
  return f;
}

bool size_alone_sufficient(const FileRecord& record, const Taxonomy& t,
                           const FamilyOverrides* overrides) {
  auto finding = evaluate(record, t, false, false, overrides);
  if (!finding) return false;
  for (Reason r : finding->reasons)
    if (r == Reason::SIZE_THRESHOLD) return true;
  return false;
}

}  // namespace zsat
