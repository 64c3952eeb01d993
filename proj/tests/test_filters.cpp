#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "filters.hpp"
#include "helpers.hpp"

using namespace zsat;
using namespace zsat::testutil;

namespace {

std::vector<std::string> paths_of(const FileSet& s) {
  std::vector<std::string> out;
  for (const auto& r : s) out.push_back(r.rel_path);
  return out;
}

FileSet set_of(std::initializer_list<const char*> names) {
  std::vector<FileRecord> recs;
  for (const char* n : names) recs.push_back(rec(n, "image", "jpg"));
  return FileSet(std::move(recs));
}

// Random universes for the property checks. Unique paths, a handful of
// directories, family mix that includes "unknown".
FileSet random_universe(std::mt19937& rng, size_t n) {
  const char* families[] = {"image", "video", "music", "unknown"};
  const char* formats[] = {"jpg", "avi", "mp3", "unknown"};
  std::vector<FileRecord> recs;
  for (size_t i = 0; i < n; ++i) {
    size_t fam = rng() % 4;
    std::string dir = "d" + std::to_string(rng() % 5);
    recs.push_back(
        rec(dir + "/f" + std::to_string(i) + ".bin", families[fam], formats[fam]));
  }
  return FileSet(std::move(recs));
}

// Independent O(n^2) recounts, deliberately structured unlike the library's
// histogram pass.
bool grouped_oracle(const FileSet& u, const FileRecord& r, const GroupedParams& p) {
  if (r.detected.family_name == "unknown") return false;
  uint64_t total = 0, same = 0;
  for (const auto& other : u) {
    if (other.dir_path != r.dir_path) continue;
    total++;
    if (other.detected.family_name == r.detected.family_name) same++;
  }
  return total >= p.min_files && double(same) / double(total) >= p.homogeneity_threshold;
}

bool isolated_oracle(const FileSet& u, const FileRecord& r, const IsolatedParams& p) {
  if (r.detected.family_name == "unknown") return false;
  std::map<std::string, uint64_t> counts;
  uint64_t total = 0;
  for (const auto& other : u) {
    if (other.dir_path != r.dir_path) continue;
    counts[other.detected.family_name]++;
    total++;
  }
  if (counts[r.detected.family_name] != 1) return false;
  uint64_t others = total - 1;
  if (others == 0 || others < p.min_other_files) return false;
  uint64_t dominant = 0;
  for (const auto& [name, c] : counts)
    if (name != r.detected.family_name) dominant = std::max(dominant, c);
  return double(dominant) / double(others) >= p.other_dominance;
}

}  // namespace

TEST_CASE("FileSet sorts by rel_path and drops later duplicates") {
  FileRecord first = rec("b/x.jpg", "image", "jpg", 100);
  FileRecord dup = rec("b/x.jpg", "video", "avi", 999);
  FileSet s(std::vector<FileRecord>{rec("c.txt", "unknown", "unknown"), first,
                                    rec("a.png", "image", "png"), dup});
  CHECK(paths_of(s) == std::vector<std::string>{"a.png", "b/x.jpg", "c.txt"});
  CHECK(s.size() == 3);
  CHECK(s.contains("b/x.jpg"));
  CHECK_FALSE(s.contains("missing"));
  // First occurrence wins the duplicate slot.
  CHECK(s.find("b/x.jpg")->size_bytes == 100);
  CHECK(s.find("nope") == nullptr);
  CHECK(FileSet{}.empty());
}

TEST_CASE("combine implements the four set operators") {
  FileSet a = set_of({"a", "b"});
  FileSet b = set_of({"b", "c"});
  CHECK(paths_of(combine(a, b, CombineMode::UNION)) ==
        std::vector<std::string>{"a", "b", "c"});
  CHECK(paths_of(combine(a, b, CombineMode::SYMMETRIC_DIFFERENCE)) ==
        std::vector<std::string>{"a", "c"});
  CHECK(paths_of(combine(a, b, CombineMode::INTERSECTION)) ==
        std::vector<std::string>{"b"});
  CHECK(paths_of(combine(a, b, CombineMode::LEFT_MINUS)) ==
        std::vector<std::string>{"a"});
  CHECK(combine(FileSet{}, b, CombineMode::UNION) == b);
  CHECK(combine(a, FileSet{}, CombineMode::INTERSECTION).empty());
}

TEST_CASE("include and exclude partition the universe") {
  FileSet u(std::vector<FileRecord>{rec("a.jpg", "image", "jpg", 10),
                                    rec("b.jpg", "image", "jpg", 200),
                                    rec("c.avi", "video", "avi", 300)});
  FilePredicate big = [](const FileRecord& r) { return r.size_bytes >= 200; };

  FileSet kept = zsat::apply(include(big), u);
  FileSet dropped = zsat::apply(exclude(big), u);
  CHECK(paths_of(kept) == std::vector<std::string>{"b.jpg", "c.avi"});
  CHECK(paths_of(dropped) == std::vector<std::string>{"a.jpg"});
  CHECK(combine(kept, dropped, CombineMode::UNION) == u);
  CHECK(combine(kept, dropped, CombineMode::INTERSECTION).empty());
}

TEST_CASE("combine expressions nest") {
  FileSet u(std::vector<FileRecord>{rec("a.jpg", "image", "jpg", 10),
                                    rec("b.jpg", "image", "jpg", 200),
                                    rec("c.avi", "video", "avi", 300),
                                    rec("d.txt", "unknown", "unknown", 5)});
  FilterExpr image_only =
      include([](const FileRecord& r) { return r.detected.family_name == "image"; });
  FilterExpr big = include([](const FileRecord& r) { return r.size_bytes >= 200; });

  // (image ∪ big) minus (image ∩ big) == image △ big
  FilterExpr u_or_b = combine_expr(image_only, big, CombineMode::UNION);
  FilterExpr u_and_b = combine_expr(image_only, big, CombineMode::INTERSECTION);
  FilterExpr diff = combine_expr(u_or_b, u_and_b, CombineMode::LEFT_MINUS);
  FilterExpr sym = combine_expr(image_only, big, CombineMode::SYMMETRIC_DIFFERENCE);
  CHECK(zsat::apply(diff, u) == zsat::apply(sym, u));
  CHECK(paths_of(zsat::apply(sym, u)) == std::vector<std::string>{"a.jpg", "c.avi"});
}

TEST_CASE("dir_histograms bucket by directory with unknown counted") {
  std::vector<FileRecord> recs;
  for (int i = 0; i < 19; ++i)
    recs.push_back(rec("photos/img" + std::to_string(i) + ".jpg", "image", "jpg"));
  recs.push_back(rec("photos/readme.txt", "unknown", "unknown"));
  recs.push_back(rec("top.avi", "video", "avi"));
  auto hists = dir_histograms(FileSet(std::move(recs)));

  REQUIRE(hists.size() == 2);
  CHECK(hists[0].dir_path == "");  // scan root sorts first
  CHECK(hists[0].total == 1);
  CHECK(hists[0].family_counts.at("video") == 1);
  CHECK(hists[1].dir_path == "photos");
  CHECK(hists[1].total == 20);
  CHECK(hists[1].family_counts.at("image") == 19);
  CHECK(hists[1].family_counts.at("unknown") == 1);
}

TEST_CASE("grouped_members flags files in near-uniform directories") {
  GroupedParams p;  // defaults: 0.9 over at least 10 files
  std::vector<FileRecord> recs;
  for (int i = 0; i < 19; ++i)
    recs.push_back(rec("photos/img" + std::to_string(i) + ".jpg", "image", "jpg"));
  recs.push_back(rec("photos/readme.txt", "unknown", "unknown"));
  FileSet u(std::move(recs));

  FileSet g = grouped_members(u, p);
  CHECK(g.size() == 19);  // 19/20 = 0.95; the txt is unknown, never flagged
  CHECK_FALSE(g.contains("photos/readme.txt"));
  CHECK(zsat::apply(grouped(p), u) == g);
}

TEST_CASE("grouped threshold boundary is inclusive") {
  GroupedParams p;
  std::vector<FileRecord> recs;
  for (int i = 0; i < 9; ++i)
    recs.push_back(rec("d/img" + std::to_string(i) + ".jpg", "image", "jpg"));
  recs.push_back(rec("d/other.avi", "video", "avi"));  // 9/10 = 0.9 exactly
  FileSet u(std::move(recs));
  CHECK(grouped_members(u, p).size() == 9);

  // One more foreign file drops it to 9/11 < 0.9.
  std::vector<FileRecord> more(u.begin(), u.end());
  more.push_back(rec("d/other2.avi", "video", "avi"));
  CHECK(grouped_members(FileSet(std::move(more)), p).empty());
}

TEST_CASE("grouped ignores directories below min_files") {
  GroupedParams p;
  std::vector<FileRecord> recs;
  for (int i = 0; i < 9; ++i)  // fully uniform but only 9 files
    recs.push_back(rec("d/img" + std::to_string(i) + ".jpg", "image", "jpg"));
  CHECK(grouped_members(FileSet(std::move(recs)), p).empty());

  p.min_files = 9;
  std::vector<FileRecord> again;
  for (int i = 0; i < 9; ++i)
    again.push_back(rec("d/img" + std::to_string(i) + ".jpg", "image", "jpg"));
  CHECK(grouped_members(FileSet(std::move(again)), p).size() == 9);
}

TEST_CASE("isolated_members flags lone family representatives") {
  IsolatedParams p;  // defaults: at least 10 others, 0.8 dominance
  std::vector<FileRecord> recs;
  recs.push_back(rec("stash/video.avi", "video", "avi"));
  for (int i = 0; i < 14; ++i)
    recs.push_back(rec("stash/note" + std::to_string(i) + ".txt", "unknown", "unknown"));
  FileSet u(std::move(recs));

  FileSet iso = isolated_members(u, p);
  CHECK(paths_of(iso) == std::vector<std::string>{"stash/video.avi"});
  CHECK(zsat::apply(isolated(p), u) == iso);
}

TEST_CASE("isolated dominance boundary is inclusive") {
  IsolatedParams p;
  auto build = [](int dominant_count) {
    std::vector<FileRecord> recs;
    recs.push_back(rec("d/one.avi", "video", "avi"));
    for (int i = 0; i < dominant_count; ++i)
      recs.push_back(rec("d/img" + std::to_string(i) + ".jpg", "image", "jpg"));
    for (int i = dominant_count; i < 10; ++i)
      recs.push_back(rec("d/note" + std::to_string(i) + ".txt", "unknown", "unknown"));
    return FileSet(std::move(recs));
  };
  CHECK(isolated_members(build(8), p).size() == 1);  // 8/10 = 0.8 exactly
  CHECK(isolated_members(build(7), p).empty());      // 7/10 < 0.8
}

TEST_CASE("isolated requires exactly one of the family and enough others") {
  IsolatedParams p;
  std::vector<FileRecord> recs;
  recs.push_back(rec("d/a.avi", "video", "avi"));
  recs.push_back(rec("d/b.avi", "video", "avi"));  // two of them: not isolated
  for (int i = 0; i < 20; ++i)
    recs.push_back(rec("d/img" + std::to_string(i) + ".jpg", "image", "jpg"));
  CHECK(isolated_members(FileSet(std::move(recs)), p).empty());

  // Too few companions.
  std::vector<FileRecord> sparse;
  sparse.push_back(rec("d/a.avi", "video", "avi"));
  for (int i = 0; i < 9; ++i)
    sparse.push_back(rec("d/img" + std::to_string(i) + ".jpg", "image", "jpg"));
  CHECK(isolated_members(FileSet(std::move(sparse)), p).empty());

  // A lone file in its directory has no others at all.
  IsolatedParams loose;
  loose.min_other_files = 1;
  CHECK(isolated_members(FileSet({rec("d/a.avi", "video", "avi")}), loose).empty());

  // Unknown files are never the isolated one, even when alone among media.
  std::vector<FileRecord> flipped;
  flipped.push_back(rec("d/odd.xyz", "unknown", "unknown"));
  for (int i = 0; i < 14; ++i)
    flipped.push_back(rec("d/img" + std::to_string(i) + ".jpg", "image", "jpg"));
  CHECK(isolated_members(FileSet(std::move(flipped)), p).empty());
}

TEST_CASE("combine agrees with a std::set oracle on random inputs") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    FileSet a = random_universe(rng, rng() % 40);
    FileSet b = random_universe(rng, rng() % 40);
    std::set<std::string> pa, pb;
    for (const auto& r : a) pa.insert(r.rel_path);
    for (const auto& r : b) pb.insert(r.rel_path);

    auto expect = [&](CombineMode mode) {
      std::vector<std::string> out;
      for (const auto& p : pa) {
        bool in_b = pb.count(p) > 0;
        if (mode == CombineMode::UNION || (mode == CombineMode::INTERSECTION && in_b) ||
            ((mode == CombineMode::LEFT_MINUS ||
              mode == CombineMode::SYMMETRIC_DIFFERENCE) &&
             !in_b))
          out.push_back(p);
      }
      if (mode == CombineMode::UNION || mode == CombineMode::SYMMETRIC_DIFFERENCE)
        for (const auto& p : pb)
          if (!pa.count(p)) out.push_back(p);
      std::sort(out.begin(), out.end());
      return out;
    };

    for (CombineMode mode : {CombineMode::UNION, CombineMode::SYMMETRIC_DIFFERENCE,
                             CombineMode::INTERSECTION, CombineMode::LEFT_MINUS}) {
      CHECK(paths_of(combine(a, b, mode)) == expect(mode));
    }

    // Algebraic sanity on the same pair. Commutativity is a path-identity
    // law: a path in both sets keeps the left operand's record, so swapped
    // operands may carry different payloads for the same membership.
    CHECK(paths_of(combine(a, b, CombineMode::UNION)) ==
          paths_of(combine(b, a, CombineMode::UNION)));
    CHECK(paths_of(combine(a, b, CombineMode::INTERSECTION)) ==
          paths_of(combine(b, a, CombineMode::INTERSECTION)));
    CHECK(combine(a, b, CombineMode::SYMMETRIC_DIFFERENCE) ==
          combine(combine(a, b, CombineMode::UNION),
                  combine(a, b, CombineMode::INTERSECTION), CombineMode::LEFT_MINUS));
  }
}

TEST_CASE("grouped and isolated agree with independent recounts") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    FileSet u = random_universe(rng, 5 + rng() % 60);
    GroupedParams gp;
    gp.min_files = 2 + rng() % 6;
    gp.homogeneity_threshold = 0.5 + (rng() % 6) * 0.1;
    IsolatedParams ip;
    ip.min_other_files = 1 + rng() % 6;
    ip.other_dominance = (rng() % 11) * 0.1;

    FileSet g = grouped_members(u, gp);
    FileSet iso = isolated_members(u, ip);
    for (const auto& r : u) {
      CAPTURE(r.rel_path);
      CHECK(g.contains(r.rel_path) == grouped_oracle(u, r, gp));
      CHECK(iso.contains(r.rel_path) == isolated_oracle(u, r, ip));
    }

    // Under the default knobs the two signals cannot co-fire: grouped needs
    // the file's own family at 90% of a 10+ file directory, isolated pins it
    // to a single representative among 10+ others.
    FileSet gd = grouped_members(u, GroupedParams{});
    FileSet id = isolated_members(u, IsolatedParams{});
    CHECK(combine(gd, id, CombineMode::INTERSECTION).empty());
  }
}
