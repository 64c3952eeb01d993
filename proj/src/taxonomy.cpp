#include "taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "default_ontology.hpp"
#include "errors.hpp"
#include "sha256.hpp"

#include <json.hpp>

namespace zsat {

namespace {

using nlohmann::ordered_json;

const std::vector<std::string> kDefaultExcludePrefixes = {"Windows/", "Program Files/"};
const std::vector<std::string> kDefaultHintPatterns = {"/temp/", "/tmp/", "/.", "recycle"};

[[noreturn]] void fail_parse(const std::string& where, const std::string& what) {
  throw ParseError("ontology parse error at " + where + ": " + what);
}

void require_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail_parse(where, "unknown key '" + it.key() + "'");
  }
}

const ordered_json& require_field(const ordered_json& obj, const char* key,
                                  const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_parse(where, std::string("missing required key '") + key + "'");
  return *it;
}

std::string get_string(const ordered_json& v, const std::string& where) {
  if (!v.is_string()) fail_parse(where, "expected a string");
  return v.get<std::string>();
}

bool get_bool(const ordered_json& v, const std::string& where) {
  if (!v.is_boolean()) fail_parse(where, "expected a boolean");
  return v.get<bool>();
}

uint64_t get_uint(const ordered_json& v, const std::string& where) {
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<int64_t>() < 0))
    fail_parse(where, "expected a non-negative integer");
  return v.get<uint64_t>();
}

double get_fraction(const ordered_json& v, const std::string& where) {
  if (!v.is_number()) fail_parse(where, "expected a number");
  return v.get<double>();
}

std::vector<std::string> get_string_list(const ordered_json& v, const std::string& where) {
  if (!v.is_array()) fail_parse(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(get_string(e, where));
  return out;
}

std::vector<uint8_t> decode_hex(const std::string& hex, const std::string& where) {
  if (hex.empty() || hex.size() % 2 != 0) fail_parse(where, "hex string must have even, non-zero length");
  std::vector<uint8_t> out;
  out.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2) {
    uint8_t byte = 0;
    for (size_t j = i; j < i + 2; ++j) {
      char c = hex[j];
      uint8_t nibble;
      if (c >= '0' && c <= '9') nibble = uint8_t(c - '0');
      else if (c >= 'A' && c <= 'F') nibble = uint8_t(c - 'A' + 10);
      else if (c >= 'a' && c <= 'f') fail_parse(where, "signature hex must be uppercase");
      else fail_parse(where, std::string("invalid hex character '") + c + "'");
      byte = uint8_t(byte << 4 | nibble);
    }
    out.push_back(byte);
  }
  return out;
}

std::string encode_hex(const std::vector<uint8_t>& bytes) {
  static const char digits[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

SuspicionCriteria parse_criteria(const ordered_json& obj, const std::string& where) {
  require_keys(obj, {"min_size_bytes", "keywords", "use_location_hints"}, where);
  SuspicionCriteria c;
  if (auto it = obj.find("min_size_bytes"); it != obj.end())
    c.min_size_bytes = get_uint(*it, where + ".min_size_bytes");
  if (auto it = obj.find("keywords"); it != obj.end())
    c.keywords = get_string_list(*it, where + ".keywords");
  if (auto it = obj.find("use_location_hints"); it != obj.end())
    c.use_location_hints = get_bool(*it, where + ".use_location_hints");
  return c;
}

Format parse_format(const ordered_json& obj, const std::string& family_name) {
  if (!obj.is_object()) fail_parse("family '" + family_name + "'", "format entries must be objects");
  Format f;
  f.name = get_string(require_field(obj, "name", "format in family '" + family_name + "'"),
                      "format.name");
  const std::string where = "format '" + f.name + "'";
  require_keys(obj, {"name", "extensions", "signatures", "criteria"}, where);
  f.extensions = get_string_list(require_field(obj, "extensions", where), where + ".extensions");
  const auto& sigs = require_field(obj, "signatures", where);
  if (!sigs.is_array()) fail_parse(where, "'signatures' must be an array");
  for (const auto& s : sigs) {
    if (!s.is_object()) fail_parse(where, "signature entries must be objects");
    require_keys(s, {"offset", "hex"}, where + ".signatures");
    Signature sig;
    sig.offset = uint32_t(get_uint(require_field(s, "offset", where), where + ".offset"));
    sig.bytes = decode_hex(get_string(require_field(s, "hex", where), where + ".hex"), where);
    f.signatures.push_back(std::move(sig));
  }
  if (auto it = obj.find("criteria"); it != obj.end()) {
    if (!it->is_object()) fail_parse(where, "'criteria' must be an object");
    f.criteria = parse_criteria(*it, where + ".criteria");
  }
  return f;
}

Family parse_family(const ordered_json& obj) {
  if (!obj.is_object()) fail_parse("families", "family entries must be objects");
  Family fam;
  fam.name = get_string(require_field(obj, "name", "family"), "family.name");
  const std::string where = "family '" + fam.name + "'";
  require_keys(obj, {"name", "enabled", "formats"}, where);
  if (auto it = obj.find("enabled"); it != obj.end()) fam.enabled = get_bool(*it, where + ".enabled");
  const auto& formats = require_field(obj, "formats", where);
  if (!formats.is_array()) fail_parse(where, "'formats' must be an array");
  for (const auto& f : formats) fam.formats.push_back(parse_format(f, fam.name));
  return fam;
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return out;
}

Taxonomy parse_taxonomy(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ontology parse error: ") + e.what());
  }
  if (!doc.is_object()) fail_parse("top level", "expected a JSON object");
  require_keys(doc,
               {"version", "priority_threshold", "families", "location_rules", "grouped",
                "isolated"},
               "top level");

  Taxonomy t;
  t.version = int(get_uint(require_field(doc, "version", "top level"), "version"));
  if (t.version != 1) fail_parse("version", "unsupported version " + std::to_string(t.version));

  if (auto it = doc.find("priority_threshold"); it != doc.end())
    t.priority_threshold = uint32_t(get_uint(*it, "priority_threshold"));

  const auto& families = require_field(doc, "families", "top level");
  if (!families.is_array()) fail_parse("families", "expected an array");
  for (const auto& f : families) t.families.push_back(parse_family(f));

  t.location_rules.exclude_prefixes = kDefaultExcludePrefixes;
  t.location_rules.hint_patterns = kDefaultHintPatterns;
  if (auto it = doc.find("location_rules"); it != doc.end()) {
    if (!it->is_object()) fail_parse("location_rules", "expected an object");
    require_keys(*it, {"exclude_prefixes", "hint_patterns"}, "location_rules");
    if (auto p = it->find("exclude_prefixes"); p != it->end())
      t.location_rules.exclude_prefixes = get_string_list(*p, "location_rules.exclude_prefixes");
    if (auto p = it->find("hint_patterns"); p != it->end())
      t.location_rules.hint_patterns = get_string_list(*p, "location_rules.hint_patterns");
  }

  if (auto it = doc.find("grouped"); it != doc.end()) {
    if (!it->is_object()) fail_parse("grouped", "expected an object");
    require_keys(*it, {"homogeneity_threshold", "min_files"}, "grouped");
    if (auto p = it->find("homogeneity_threshold"); p != it->end())
      t.grouped.homogeneity_threshold = get_fraction(*p, "grouped.homogeneity_threshold");
    if (auto p = it->find("min_files"); p != it->end())
      t.grouped.min_files = uint32_t(get_uint(*p, "grouped.min_files"));
  }

  if (auto it = doc.find("isolated"); it != doc.end()) {
    if (!it->is_object()) fail_parse("isolated", "expected an object");
    require_keys(*it, {"min_other_files", "other_dominance"}, "isolated");
    if (auto p = it->find("min_other_files"); p != it->end())
      t.isolated.min_other_files = uint32_t(get_uint(*p, "isolated.min_other_files"));
    if (auto p = it->find("other_dominance"); p != it->end())
      t.isolated.other_dominance = get_fraction(*p, "isolated.other_dominance");
  }

  return t;
}

std::vector<Violation> validate(const Taxonomy& t) {
  std::vector<Violation> out;
  auto flag = [&out](std::string element, std::string rule) {
    out.push_back({std::move(element), std::move(rule)});
  };

  std::set<std::string> family_names;
  std::set<std::string> format_names;
  std::map<std::string, std::string> extension_owner;  // ext -> format name

  for (const auto& fam : t.families) {
    if (fam.name.empty()) flag("family", "family name must be non-empty");
    if (!family_names.insert(fam.name).second)
      flag("family '" + fam.name + "'", "duplicate family name");
    if (fam.formats.empty()) flag("family '" + fam.name + "'", "family has no formats");

    for (const auto& fmt : fam.formats) {
      const std::string elem = "format '" + fmt.name + "'";
      if (fmt.name.empty()) flag("format", "format name must be non-empty");
      if (!format_names.insert(fmt.name).second) flag(elem, "duplicate format name");
      if (fmt.extensions.empty()) flag(elem, "format must list at least one extension");
      if (fmt.signatures.empty()) flag(elem, "format must carry at least one content signature");

      for (const auto& ext : fmt.extensions) {
        if (ext.empty()) {
          flag(elem, "extension must be non-empty");
          continue;
        }
        if (ext != to_lower(ext)) flag("extension '" + ext + "'", "extensions must be lowercase");
        auto [it, inserted] = extension_owner.emplace(ext, fmt.name);
        if (!inserted && it->second != fmt.name)
          flag("extension '" + ext + "'",
               "extension mapped by both '" + it->second + "' and '" + fmt.name + "'");
        else if (!inserted)
          flag("extension '" + ext + "'", "extension listed twice by '" + fmt.name + "'");
      }

      for (const auto& sig : fmt.signatures) {
        if (sig.bytes.size() < kSignatureMinBytes || sig.bytes.size() > kSignatureMaxBytes)
          flag(elem, "signature must be 2-16 bytes");
        if (sig.offset + sig.bytes.size() > kHeaderWindow)
          flag(elem, "signature exceeds the 64-byte header window");
      }
    }
  }

  if (!(t.grouped.homogeneity_threshold > 0.0 && t.grouped.homogeneity_threshold <= 1.0))
    flag("grouped.homogeneity_threshold", "must be in (0, 1]");
  if (t.grouped.min_files < 2) flag("grouped.min_files", "must be >= 2");
  if (t.isolated.min_other_files < 1) flag("isolated.min_other_files", "must be >= 1");
  if (!(t.isolated.other_dominance >= 0.0 && t.isolated.other_dominance <= 1.0))
    flag("isolated.other_dominance", "must be in [0, 1]");

  return out;
}

Taxonomy load_taxonomy(std::string_view json_text) {
  Taxonomy t = parse_taxonomy(json_text);
  auto violations = validate(t);
  if (!violations.empty()) {
    std::string msg = "ontology validation failed:";
    for (const auto& v : violations) msg += "\n  " + v.element + ": " + v.rule;
    throw ValidationError(msg);
  }
  return t;
}

std::string serialize(const Taxonomy& t) {
  ordered_json doc;
  doc["version"] = t.version;
  doc["priority_threshold"] = t.priority_threshold;
  doc["families"] = ordered_json::array();
  for (const auto& fam : t.families) {
    ordered_json jfam;
    jfam["name"] = fam.name;
    jfam["enabled"] = fam.enabled;
    jfam["formats"] = ordered_json::array();
    for (const auto& fmt : fam.formats) {
      ordered_json jfmt;
      jfmt["name"] = fmt.name;
      jfmt["extensions"] = fmt.extensions;
      jfmt["signatures"] = ordered_json::array();
      for (const auto& sig : fmt.signatures)
        jfmt["signatures"].push_back({{"offset", sig.offset}, {"hex", encode_hex(sig.bytes)}});
      jfmt["criteria"] = {{"min_size_bytes", fmt.criteria.min_size_bytes},
                          {"keywords", fmt.criteria.keywords},
                          {"use_location_hints", fmt.criteria.use_location_hints}};
      jfam["formats"].push_back(std::move(jfmt));
    }
    doc["families"].push_back(std::move(jfam));
  }
  doc["location_rules"] = {{"exclude_prefixes", t.location_rules.exclude_prefixes},
                           {"hint_patterns", t.location_rules.hint_patterns}};
  doc["grouped"] = {{"homogeneity_threshold", t.grouped.homogeneity_threshold},
                    {"min_files", t.grouped.min_files}};
  doc["isolated"] = {{"min_other_files", t.isolated.min_other_files},
                     {"other_dominance", t.isolated.other_dominance}};
  return doc.dump(2) + "\n";
}

std::string taxonomy_digest(const Taxonomy& t) { return sha256_hex(serialize(t)); }

std::string_view default_ontology_json() { return kDefaultOntologyJson; }

const Taxonomy& default_taxonomy() {
  static const Taxonomy t = load_taxonomy(kDefaultOntologyJson);
  return t;
}

const Format* format_for_extension(const Taxonomy& t, std::string_view ext) {
  if (ext.empty()) return nullptr;
  const std::string needle = to_lower(ext);
  for (const auto& fam : t.families)
    for (const auto& fmt : fam.formats)
      for (const auto& e : fmt.extensions)
        if (e == needle) return &fmt;
  return nullptr;
}

const Family* find_family(const Taxonomy& t, std::string_view family_name) {
  for (const auto& fam : t.families)
    if (fam.name == family_name) return &fam;
  return nullptr;
}

const Family* family_of_format(const Taxonomy& t, std::string_view format_name) {
  for (const auto& fam : t.families)
    for (const auto& fmt : fam.formats)
      if (fmt.name == format_name) return &fam;
  return nullptr;
}

const Format* find_format(const Taxonomy& t, std::string_view format_name) {
  for (const auto& fam : t.families)
    for (const auto& fmt : fam.formats)
      if (fmt.name == format_name) return &fmt;
  return nullptr;
}

}  // namespace zsat
