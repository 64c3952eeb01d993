#include "detect.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "errors.hpp"

namespace zsat {

const char* via_name(DetectVia via) {
  switch (via) {
    case DetectVia::SIGNATURE: return "SIGNATURE";
    case DetectVia::EXTENSION_ONLY: return "EXTENSION_ONLY";
    case DetectVia::NONE: return "NONE";
  }
  return "NONE";
}

Detector::Detector(const Taxonomy& t) : taxonomy_(t) {
  for (const auto& fam : t.families) {
    for (const auto& fmt : fam.formats) {
      Entry entry;
      entry.format = &fmt;
      entry.family = &fam;
      std::map<uint32_t, Part> by_offset;
      for (const auto& sig : fmt.signatures) {
        Part& part = by_offset[sig.offset];
        part.offset = sig.offset;
        part.alternatives.push_back(sig.bytes);
      }
      for (auto& [offset, part] : by_offset) entry.parts.push_back(std::move(part));
      entries_.push_back(std::move(entry));
    }
  }
}

int Detector::match_score(const Entry& entry, std::span<const uint8_t> header) {
  int score = 0;
  for (const auto& part : entry.parts) {
    int best = -1;
    for (const auto& alt : part.alternatives) {
      if (part.offset + alt.size() > header.size()) continue;
      if (std::equal(alt.begin(), alt.end(), header.begin() + part.offset))
        best = std::max(best, int(alt.size()));
    }
    if (best < 0) return -1;
    score += best;
  }
  return score;
}

bool Detector::uncheckable(const Entry& entry, std::span<const uint8_t> header) {
  for (const auto& part : entry.parts)
    for (const auto& alt : part.alternatives)
      if (part.offset + alt.size() <= header.size()) return false;
  return true;
}

DetectedFormat Detector::detect(std::span<const uint8_t> header,
                                std::string_view extension) const {
  const Format* ext_format = format_for_extension(taxonomy_, extension);

  const Entry* winner = nullptr;
  int winner_score = -1;
  for (const auto& entry : entries_) {
    int score = match_score(entry, header);
    if (score < 0) continue;
    if (score > winner_score) {
      winner = &entry;
      winner_score = score;
    } else if (score == winner_score && ext_format == entry.format && winner &&
               winner->format != ext_format) {
      // Equal evidence; the claimed extension settles it (ogg vs ogm).
      winner = &entry;
    }
  }

  DetectedFormat out;
  if (winner) {
    out.format_name = winner->format->name;
    out.family_name = winner->family->name;
    out.via = DetectVia::SIGNATURE;
    out.mismatch = ext_format != winner->format;
    return out;
  }

  if (!ext_format) return out;  // nothing claimed, nothing found

  out.mismatch = true;  // the extension claims a format the content does not support
  for (const auto& entry : entries_) {
    if (entry.format != ext_format) continue;
    if (uncheckable(entry, header)) {
      out.format_name = ext_format->name;
      out.family_name = entry.family->name;
      out.via = DetectVia::EXTENSION_ONLY;
    }
    break;
  }
  return out;
}

DetectedFormat detect(std::span<const uint8_t> header, std::string_view extension,
                      const Taxonomy& t) {
  return Detector(t).detect(header, extension);
}

std::vector<uint8_t> read_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::vector<uint8_t> buf(kHeaderWindow);
  in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
  if (in.bad()) throw IoError("read failed: " + path.string());
  buf.resize(size_t(in.gcount()));
  return buf;
}

std::string extension_of(std::string_view filename) {
  std::string ext = std::filesystem::path(filename).extension().string();
  if (!ext.empty() && ext.front() == '.') ext.erase(ext.begin());
  return to_lower(ext);
}

}  // namespace zsat
