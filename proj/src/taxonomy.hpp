#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zsat {

// One content signature: exact bytes expected at a fixed offset inside the
// 64-byte header window. Formats may carry several: signatures at the same
// offset are alternatives (any may match), signatures at distinct offsets
// are parts of one layout (all must match).
struct Signature {
  uint32_t offset = 0;
  std::vector<uint8_t> bytes;

  bool operator==(const Signature&) const = default;
};

struct SuspicionCriteria {
  uint64_t min_size_bytes = 0;
  std::vector<std::string> keywords;
  bool use_location_hints = true;

  bool operator==(const SuspicionCriteria&) const = default;
};

struct Format {
  std::string name;
  std::vector<std::string> extensions;  // lowercase, unique across the taxonomy
  std::vector<Signature> signatures;
  SuspicionCriteria criteria;

  bool operator==(const Format&) const = default;
};

struct Family {
  std::string name;
  bool enabled = true;
  std::vector<Format> formats;

  bool operator==(const Family&) const = default;
};

struct LocationRules {
  // Path prefixes (relative to the scan root) that are never descended into.
  std::vector<std::string> exclude_prefixes;
  // Path substrings that mark a location as interesting (temp dirs, hidden
  // dirs, recycle bins). Matched case-insensitively against "/" + rel_path.
  std::vector<std::string> hint_patterns;

  bool operator==(const LocationRules&) const = default;
};

struct GroupedParams {
  double homogeneity_threshold = 0.9;
  uint32_t min_files = 10;

  bool operator==(const GroupedParams&) const = default;
};

struct IsolatedParams {
  uint32_t min_other_files = 10;
  double other_dominance = 0.8;

  bool operator==(const IsolatedParams&) const = default;
};

struct Violation {
  std::string element;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

// The loaded ontology: family -> format hierarchy plus scan policy knobs.
// Immutable after load; safe to share across scanner workers.
struct Taxonomy {
  int version = 1;
  uint32_t priority_threshold = 10;
  std::vector<Family> families;
  LocationRules location_rules;
  GroupedParams grouped;
  IsolatedParams isolated;

  bool operator==(const Taxonomy&) const = default;
};

inline constexpr size_t kHeaderWindow = 64;
inline constexpr size_t kSignatureMaxBytes = 16;
inline constexpr size_t kSignatureMinBytes = 2;

// Syntax layer: parses the JSON configuration, applying documented defaults.
// Rejects unknown keys. Throws ParseError. Does not check taxonomy invariants.
Taxonomy parse_taxonomy(std::string_view json_text);

// Returns every invariant breach; empty means the taxonomy is well formed.
std::vector<Violation> validate(const Taxonomy& t);

// parse + validate. Throws ParseError or ValidationError (message names the
// offending elements).
Taxonomy load_taxonomy(std::string_view json_text);

// Canonical serialization: stable key order, deterministic bytes.
// load_taxonomy(serialize(t)) == t.
std::string serialize(const Taxonomy& t);

// SHA-256 hex of the canonical serialization. This is the digest reports
// embed, so a report stays auditable against the exact ontology used.
std::string taxonomy_digest(const Taxonomy& t);

// The ontology compiled into the library; loaded on first use.
const Taxonomy& default_taxonomy();
std::string_view default_ontology_json();

// Case-insensitive extension lookup. Returns nullptr when unmapped.
const Format* format_for_extension(const Taxonomy& t, std::string_view ext);

// Family lookup by name, and the family a format belongs to.
const Family* find_family(const Taxonomy& t, std::string_view family_name);
const Family* family_of_format(const Taxonomy& t, std::string_view format_name);
const Format* find_format(const Taxonomy& t, std::string_view format_name);

std::string to_lower(std::string_view s);

}  // namespace zsat
