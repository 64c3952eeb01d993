#include "corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include "errors.hpp"

#include <json.hpp>

namespace zsat {

namespace fs = std::filesystem;

namespace {

using nlohmann::ordered_json;

// First 64 bytes of reference-encoder output for each planted format; bodies
// beyond the header are seeded noise since only headers are ever inspected.
constexpr char kJpgHeader[] =
    "FFD8FFE000104A46494600010100000100010000FFDB004300080606070605080707070909080A0C140D0C0B"
    "0B0C1912130F141D1A1F1E1D1A1C1C20242E2720";
constexpr char kPngHeader[] =
    "89504E470D0A1A0A0000000D49484452000000080000000808020000004B6D29DC000000144944415478"
    "9C63AC903BC1800D3061151DB41200157B016E5CB9AC";
constexpr char kAviHeader[] =
    "52494646DA180000415649204C495354EC1100006864726C6176696838000000400D0300C003000000000000"
    "1009000003000000000000000100000000001000";

std::vector<uint8_t> from_hex(const char* hex) {
  std::vector<uint8_t> out;
  for (const char* p = hex; p[0] && p[1]; p += 2) {
    auto nibble = [](char c) {
      return uint8_t(c <= '9' ? c - '0' : c - 'A' + 10);
    };
    out.push_back(uint8_t(nibble(p[0]) << 4 | nibble(p[1])));
  }
  return out;
}

// mt19937_64 itself is pinned by the standard; std::uniform_int_distribution
// is not, so sampling stays hand-rolled for cross-library determinism.
uint64_t bounded(std::mt19937_64& rng, uint64_t n) { return n ? rng() % n : 0; }

std::string numbered(const char* stem, uint64_t i, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%05llu%s", stem, static_cast<unsigned long long>(i), ext);
  return buf;
}

void write_media(const fs::path& path, const std::vector<uint8_t>& header, uint64_t total_size,
                 std::mt19937_64& rng) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create file: " + path.string());
  out.write(reinterpret_cast<const char*>(header.data()),
            std::streamsize(std::min<uint64_t>(header.size(), total_size)));
  uint64_t remaining = total_size > header.size() ? total_size - header.size() : 0;
  std::vector<uint8_t> block(64 * 1024);
  while (remaining > 0) {
    const uint64_t n = std::min<uint64_t>(remaining, block.size());
    for (uint64_t i = 0; i < n; i += 8) {
      uint64_t word = rng();
      for (uint64_t b = 0; b < 8 && i + b < n; ++b) block[i + b] = uint8_t(word >> (8 * b));
    }
    out.write(reinterpret_cast<const char*>(block.data()), std::streamsize(n));
    remaining -= n;
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_text(const fs::path& path, uint64_t index, uint64_t target_size) {
  std::string body = "entry " + std::to_string(index) + ": plain tree filler\n";
  while (body.size() < target_size)
    body += "nothing of interest here, line kept for bulk\n";
  body.resize(target_size > 0 ? target_size : body.size());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create file: " + path.string());
  out.write(body.data(), std::streamsize(body.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

ordered_json spec_to_json(const CorpusSpec& s) {
  return {{"seed", s.seed},
          {"innocuous_files", s.innocuous_files},
          {"planted_images", s.planted_images},
          {"planted_videos", s.planted_videos},
          {"planted_keyword_files", s.planted_keyword_files},
          {"planted_mismatch_files", s.planted_mismatch_files},
          {"directories", s.directories},
          {"keyword", s.keyword}};
}

CorpusSpec spec_from_json(const ordered_json& j) {
  CorpusSpec s;
  s.seed = j.at("seed").get<uint64_t>();
  s.innocuous_files = j.at("innocuous_files").get<uint64_t>();
  s.planted_images = j.at("planted_images").get<uint64_t>();
  s.planted_videos = j.at("planted_videos").get<uint64_t>();
  s.planted_keyword_files = j.at("planted_keyword_files").get<uint64_t>();
  s.planted_mismatch_files = j.at("planted_mismatch_files").get<uint64_t>();
  s.directories = j.at("directories").get<uint64_t>();
  s.keyword = j.at("keyword").get<std::string>();
  return s;
}

}  // namespace

std::filesystem::path manifest_path_for(const std::filesystem::path& out_dir) {
  std::string base = out_dir.string();
  while (!base.empty() && base.back() == '/') base.pop_back();
  return fs::path(base + ".manifest.json");
}

Manifest generate(const CorpusSpec& spec, const fs::path& out_dir) {
  if (spec.directories < 1) throw ValidationError("corpus needs at least one directory");
  // Generated names live in a fixed buffer; a runaway keyword would truncate
  // into colliding filenames.
  if (spec.keyword.size() > 40)
    throw ValidationError("corpus keyword is limited to 40 characters");
  std::error_code ec;
  if (fs::exists(out_dir, ec)) {
    if (!fs::is_directory(out_dir, ec))
      throw IoError("corpus target exists and is not a directory: " + out_dir.string());
    if (fs::directory_iterator(out_dir, ec) != fs::directory_iterator())
      throw IoError("refusing to write into non-empty directory: " + out_dir.string());
  }
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create corpus root: " + out_dir.string());

  std::mt19937_64 rng(spec.seed);

  // Directory tree: each new directory hangs off a random existing one.
  std::vector<std::string> dirs;  // rel paths, [0] is the root ""
  dirs.emplace_back("");
  for (uint64_t i = 1; i < spec.directories; ++i) {
    const std::string name = numbered("dir_", i, "");
    const std::string parent = dirs[bounded(rng, dirs.size())];
    const std::string rel = parent.empty() ? name : parent + "/" + name;
    fs::create_directory(out_dir / rel, ec);
    if (ec) throw IoError("cannot create directory: " + (out_dir / rel).string());
    dirs.push_back(rel);
  }

  // With enough material, force one near-homogeneous directory and one
  // lone-file directory so the proximity filters always have something real
  // to chew on.
  const bool shaped =
      spec.directories >= 3 && spec.planted_images >= 13 && spec.innocuous_files >= 15;
  const size_t dense_dir = 1, lone_dir = 2;

  auto pick_dir = [&](bool allow_shaped_dirs) -> const std::string& {
    for (;;) {
      size_t i = size_t(bounded(rng, dirs.size()));
      if (shaped && !allow_shaped_dirs && (i == dense_dir || i == lone_dir)) continue;
      return dirs[i];
    }
  };
  auto place = [&](uint64_t index, uint64_t special_until, size_t special_dir,
                   const std::string& name) {
    const std::string& dir =
        (shaped && index < special_until) ? dirs[special_dir] : pick_dir(false);
    return dir.empty() ? name : dir + "/" + name;
  };

  const Taxonomy& t = default_taxonomy();
  const uint64_t image_min = find_format(t, "jpg")->criteria.min_size_bytes;
  const uint64_t video_min = find_format(t, "avi")->criteria.min_size_bytes;
  const auto jpg = from_hex(kJpgHeader);
  const auto png = from_hex(kPngHeader);
  const auto avi = from_hex(kAviHeader);

  Manifest m;
  m.spec = spec;
  auto record = [&m](std::string rel, std::string family, std::vector<Reason> reasons,
                     bool planted) {
    m.files.push_back({std::move(rel), std::move(family), std::move(reasons), planted});
  };

  for (uint64_t i = 0; i < spec.innocuous_files; ++i) {
    static const char* exts[] = {".txt", ".log", ".ini", ".dat", ".tmp"};
    const std::string name = numbered("note_", i, exts[i % 5]);
    // First innocuous file dilutes the dense dir; the next fourteen surround
    // the lone image.
    const std::string rel = (shaped && i == 0)       ? place(i, 1, dense_dir, name)
                            : (shaped && i < 15)     ? place(i, 15, lone_dir, name)
                                                     : place(i, 0, 0, name);
    write_text(out_dir / rel, i, 64 + bounded(rng, 4033));
    record(rel, "unknown", {}, false);
  }

  for (uint64_t i = 0; i < spec.planted_images; ++i) {
    const bool as_png = i % 2 == 1;
    const std::string name = numbered("img_", i, as_png ? ".png" : ".jpg");
    // Twelve build the homogeneous directory, the thirteenth sits alone.
    const std::string rel = (shaped && i < 12)  ? place(i, 12, dense_dir, name)
                            : (shaped && i < 13) ? place(i, 13, lone_dir, name)
                                                 : place(i, 0, 0, name);
    write_media(out_dir / rel, as_png ? png : jpg, image_min + bounded(rng, 8192), rng);
    record(rel, "image", {Reason::SIZE_THRESHOLD}, true);
  }

  for (uint64_t i = 0; i < spec.planted_videos; ++i) {
    const std::string rel = place(0, 0, 0, numbered("vid_", i, ".avi"));
    write_media(out_dir / rel, avi, video_min + bounded(rng, 65536), rng);
    record(rel, "video", {Reason::SIZE_THRESHOLD}, true);
  }

  for (uint64_t i = 0; i < spec.planted_keyword_files; ++i) {
    const std::string name =
        numbered(("img_" + spec.keyword + "_").c_str(), i, ".jpg");
    const std::string rel = place(0, 0, 0, name);
    // Small on purpose: the stem is the only tell.
    write_media(out_dir / rel, jpg, 1024 + bounded(rng, image_min / 2 - 1024), rng);
    record(rel, "image", {Reason::KEYWORD_MATCH}, true);
  }

  for (uint64_t i = 0; i < spec.planted_mismatch_files; ++i) {
    const std::string name = numbered("doc_", i, i % 2 ? ".dat" : ".txt");
    const std::string rel = place(0, 0, 0, name);
    write_media(out_dir / rel, jpg, 1024 + bounded(rng, image_min / 2 - 1024), rng);
    record(rel, "image", {Reason::EXTENSION_MISMATCH}, true);
  }

  std::sort(m.files.begin(), m.files.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.rel_path < b.rel_path; });
  write_manifest(m, manifest_path_for(out_dir));
  return m;
}

void write_manifest(const Manifest& m, const fs::path& path) {
  ordered_json doc;
  doc["spec"] = spec_to_json(m.spec);
  doc["files"] = ordered_json::array();
  for (const auto& e : m.files) {
    ordered_json jf;
    jf["rel_path"] = e.rel_path;
    jf["expected_family"] = e.expected_family;
    jf["expected_reasons"] = ordered_json::array();
    for (Reason r : e.expected_reasons) jf["expected_reasons"].push_back(reason_name(r));
    jf["is_planted"] = e.is_planted;
    doc["files"].push_back(std::move(jf));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("manifest write failed: " + path.string());
}

Manifest load_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read manifest: " + path.string());
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest parse error: " + std::string(e.what()));
  }
  Manifest m;
  try {
    m.spec = spec_from_json(doc.at("spec"));
    for (const auto& jf : doc.at("files")) {
      ManifestEntry e;
      e.rel_path = jf.at("rel_path").get<std::string>();
      e.expected_family = jf.at("expected_family").get<std::string>();
      for (const auto& name : jf.at("expected_reasons")) {
        auto r = reason_from_name(name.get<std::string>());
        if (!r) throw ParseError("manifest parse error: unknown reason");
        e.expected_reasons.push_back(*r);
      }
      e.is_planted = jf.at("is_planted").get<bool>();
      m.files.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest parse error: " + std::string(e.what()));
  }
  return m;
}

}  // namespace zsat
