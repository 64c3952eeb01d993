#include "report.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

#include <json.hpp>

namespace zsat {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) {
  throw ParseError("report parse error: " + what);
}

template <typename T>
T field(const ordered_json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing key '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(std::string("bad value for key '") + key + "'");
  }
}

}  // namespace

const char* recommendation_name(Recommendation r) {
  return r == Recommendation::HIGH ? "HIGH" : "LOW";
}

Recommendation recommend(uint64_t findings_count, const Taxonomy& t) {
  return findings_count >= t.priority_threshold ? Recommendation::HIGH
                                                : Recommendation::LOW;
}

ReportFinding to_report_finding(const Finding& f) {
  ReportFinding out;
  out.path = f.record.rel_path;
  out.family = f.record.detected.family_name;
  out.format = f.record.detected.format_name;
  out.size_bytes = f.record.size_bytes;
  out.reasons = f.reasons;
  out.matched_keyword = f.matched_keyword;
  return out;
}

TriageReport build_report(std::string root, const Taxonomy& t, ScanStats stats,
                          std::vector<ReportFinding> findings) {
  std::sort(findings.begin(), findings.end(),
            [](const ReportFinding& a, const ReportFinding& b) { return a.path < b.path; });
  TriageReport r;
  r.taxonomy_digest = taxonomy_digest(t);
  r.root = std::move(root);
  r.stats = std::move(stats);
  r.stats.findings_count = findings.size();
  for (const auto& f : findings) r.per_family_counts[f.family]++;
  r.findings = std::move(findings);
  r.recommendation = recommend(r.stats.findings_count, t);
  return r;
}

std::string serialize(const TriageReport& r, ReportFormat format) {
  if (format == ReportFormat::JSON) {
    ordered_json doc;
    doc["tool_version"] = r.tool_version;
    doc["taxonomy_digest"] = r.taxonomy_digest;
    doc["root"] = r.root;
    ordered_json stats;
    stats["files_seen"] = r.stats.files_seen;
    stats["dirs_seen"] = r.stats.dirs_seen;
    stats["bytes_seen"] = r.stats.bytes_seen;
    stats["files_matched"] = r.stats.files_matched;
    stats["findings_count"] = r.stats.findings_count;
    stats["elapsed_ms"] = r.stats.elapsed_ms;
    stats["partial"] = r.stats.partial;
    stats["warnings"] = ordered_json::array();
    for (const auto& w : r.stats.warnings)
      stats["warnings"].push_back({{"path", w.path}, {"message", w.message}});
    doc["stats"] = std::move(stats);
    doc["findings"] = ordered_json::array();
    for (const auto& f : r.findings) {
      ordered_json jf;
      jf["path"] = f.path;
      jf["family"] = f.family;
      jf["format"] = f.format;
      jf["size_bytes"] = f.size_bytes;
      jf["reasons"] = ordered_json::array();
      for (Reason reason : f.reasons) jf["reasons"].push_back(reason_name(reason));
      if (f.matched_keyword) jf["matched_keyword"] = *f.matched_keyword;
      doc["findings"].push_back(std::move(jf));
    }
    doc["per_family_counts"] = ordered_json::object();
    for (const auto& [family, count] : r.per_family_counts)
      doc["per_family_counts"][family] = count;
    doc["recommendation"] = recommendation_name(r.recommendation);
    // Filenames are raw bytes on Linux; don't let a stray non-UTF8 name abort
    // report writing.
    return doc.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
  }

  std::ostringstream out;
  out << "triage report (tool " << r.tool_version << ")\n";
  out << "root: " << r.root << '\n';
  out << "scanned: " << r.stats.files_seen << " files, " << r.stats.dirs_seen << " dirs, "
      << r.stats.bytes_seen << " bytes\n";
  out << "matched: " << r.stats.files_matched << " files of known enabled families\n";
  out << "elapsed: " << r.stats.elapsed_ms << " ms"
      << (r.stats.partial ? " (PARTIAL: budget exhausted)" : " (complete)") << '\n';
  if (!r.stats.warnings.empty()) out << "warnings: " << r.stats.warnings.size() << '\n';
  out << r.stats.findings_count << " findings";
  if (!r.per_family_counts.empty()) {
    out << " (";
    bool first = true;
    for (const auto& [family, count] : r.per_family_counts) {
      if (!first) out << ", ";
      out << family << ": " << count;
      first = false;
    }
    out << ")";
  }
  out << '\n';
  constexpr size_t kTextTop = 10;
  for (size_t i = 0; i < r.findings.size() && i < kTextTop; ++i) {
    const auto& f = r.findings[i];
    out << "  " << f.path << "  [" << f.family << "/" << f.format << ", " << f.size_bytes
        << " bytes]  ";
    for (size_t j = 0; j < f.reasons.size(); ++j)
      out << (j ? "+" : "") << reason_name(f.reasons[j]);
    out << '\n';
  }
  if (r.findings.size() > kTextTop)
    out << "  ... " << (r.findings.size() - kTextTop) << " more\n";
  out << "recommendation: " << recommendation_name(r.recommendation) << '\n';
  return out.str();
}

TriageReport deserialize_report(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
  if (!doc.is_object()) fail("expected a JSON object");

  TriageReport r;
  r.tool_version = field<std::string>(doc, "tool_version");
  r.taxonomy_digest = field<std::string>(doc, "taxonomy_digest");
  r.root = field<std::string>(doc, "root");

  const auto& stats = doc.find("stats") != doc.end() ? doc["stats"] : ordered_json();
  if (!stats.is_object()) fail("missing stats object");
  r.stats.files_seen = field<uint64_t>(stats, "files_seen");
  r.stats.dirs_seen = field<uint64_t>(stats, "dirs_seen");
  r.stats.bytes_seen = field<uint64_t>(stats, "bytes_seen");
  r.stats.files_matched = field<uint64_t>(stats, "files_matched");
  r.stats.findings_count = field<uint64_t>(stats, "findings_count");
  r.stats.elapsed_ms = field<uint64_t>(stats, "elapsed_ms");
  r.stats.partial = field<bool>(stats, "partial");
  const auto& warnings = stats.find("warnings") != stats.end() ? stats["warnings"] : ordered_json();
  if (!warnings.is_array()) fail("stats.warnings must be an array");
  for (const auto& w : warnings)
    r.stats.warnings.push_back({field<std::string>(w, "path"), field<std::string>(w, "message")});

  const auto& findings = doc.find("findings") != doc.end() ? doc["findings"] : ordered_json();
  if (!findings.is_array()) fail("findings must be an array");
  for (const auto& jf : findings) {
    ReportFinding f;
    f.path = field<std::string>(jf, "path");
    f.family = field<std::string>(jf, "family");
    f.format = field<std::string>(jf, "format");
    f.size_bytes = field<uint64_t>(jf, "size_bytes");
    for (const auto& name : field<std::vector<std::string>>(jf, "reasons")) {
      auto reason = reason_from_name(name);
      if (!reason) fail("unknown reason '" + name + "'");
      f.reasons.push_back(*reason);
    }
    if (auto it = jf.find("matched_keyword"); it != jf.end()) {
      if (!it->is_string()) fail("bad value for key 'matched_keyword'");
      f.matched_keyword = it->get<std::string>();
    }
    r.findings.push_back(std::move(f));
  }

  const auto& counts =
      doc.find("per_family_counts") != doc.end() ? doc["per_family_counts"] : ordered_json();
  if (!counts.is_object()) fail("per_family_counts must be an object");
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (!it.value().is_number_unsigned()) fail("bad count for family '" + it.key() + "'");
    r.per_family_counts[it.key()] = it.value().get<uint64_t>();
  }

  const std::string rec = field<std::string>(doc, "recommendation");
  if (rec == "HIGH") r.recommendation = Recommendation::HIGH;
  else if (rec == "LOW") r.recommendation = Recommendation::LOW;
  else fail("unknown recommendation '" + rec + "'");

  return r;
}

}  // namespace zsat
