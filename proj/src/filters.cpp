#include "filters.hpp"

#include <algorithm>

namespace zsat {

namespace {

bool path_less(const FileRecord& a, const FileRecord& b) { return a.rel_path < b.rel_path; }

std::map<std::string, DirHistogram> histogram_index(const FileSet& universe) {
  std::map<std::string, DirHistogram> by_dir;
  for (const auto& rec : universe) {
    DirHistogram& h = by_dir[rec.dir_path];
    h.dir_path = rec.dir_path;
    h.family_counts[rec.detected.family_name]++;
    h.total++;
  }
  return by_dir;
}

}  // namespace

FileSet::FileSet(std::vector<FileRecord> records) : members_(std::move(records)) {
  std::sort(members_.begin(), members_.end(), path_less);
  members_.erase(std::unique(members_.begin(), members_.end(),
                             [](const FileRecord& a, const FileRecord& b) {
                               return a.rel_path == b.rel_path;
                             }),
                 members_.end());
}

const FileRecord* FileSet::find(std::string_view rel_path) const {
  auto it = std::lower_bound(
      members_.begin(), members_.end(), rel_path,
      [](const FileRecord& rec, std::string_view key) { return rec.rel_path < key; });
  if (it == members_.end() || it->rel_path != rel_path) return nullptr;
  return &*it;
}

FilterExpr include(FilePredicate pred) { return IncludeExpr{std::move(pred)}; }
FilterExpr exclude(FilePredicate pred) { return ExcludeExpr{std::move(pred)}; }
FilterExpr grouped(GroupedParams params) { return GroupedExpr{params}; }
FilterExpr isolated(IsolatedParams params) { return IsolatedExpr{params}; }

FilterExpr combine_expr(FilterExpr left, FilterExpr right, CombineMode mode) {
  return CombineExpr{std::make_shared<FilterExpr>(std::move(left)),
                     std::make_shared<FilterExpr>(std::move(right)), mode};
}

FileSet apply(const FilterExpr& expr, const FileSet& universe) {
  struct Visitor {
    const FileSet& universe;

    FileSet select(const FilePredicate& pred, bool keep_matching) const {
      std::vector<FileRecord> out;
      for (const auto& rec : universe)
        if (pred(rec) == keep_matching) out.push_back(rec);
      return FileSet(std::move(out));
    }

    FileSet operator()(const IncludeExpr& e) const { return select(e.pred, true); }
    FileSet operator()(const ExcludeExpr& e) const { return select(e.pred, false); }
    FileSet operator()(const GroupedExpr& e) const {
      return grouped_members(universe, e.params);
    }
    FileSet operator()(const IsolatedExpr& e) const {
      return isolated_members(universe, e.params);
    }
    FileSet operator()(const CombineExpr& e) const {
      // Qualified: plain "apply" would drag std::apply in through the
      // variant's ADL.
      return combine(zsat::apply(*e.left, universe), zsat::apply(*e.right, universe),
                     e.mode);
    }
  };
  return std::visit(Visitor{universe}, expr);
}

FileSet combine(const FileSet& a, const FileSet& b, CombineMode mode) {
  std::vector<FileRecord> out;
  const auto& ma = a.members();
  const auto& mb = b.members();
  switch (mode) {
    case CombineMode::UNION:
      std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(out),
                     path_less);
      break;
    case CombineMode::SYMMETRIC_DIFFERENCE:
      std::set_symmetric_difference(ma.begin(), ma.end(), mb.begin(), mb.end(),
                                    std::back_inserter(out), path_less);
      break;
    case CombineMode::INTERSECTION:
      std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(),
                            std::back_inserter(out), path_less);
      break;
    case CombineMode::LEFT_MINUS:
      std::set_difference(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(out),
                          path_less);
      break;
  }
  return FileSet(std::move(out));
}

std::vector<DirHistogram> dir_histograms(const FileSet& universe) {
  std::vector<DirHistogram> out;
  for (auto& [dir, hist] : histogram_index(universe)) out.push_back(std::move(hist));
  return out;
}

FileSet grouped_members(const FileSet& universe, const GroupedParams& p) {
  auto by_dir = histogram_index(universe);
  std::vector<FileRecord> out;
  for (const auto& rec : universe) {
    const std::string& family = rec.detected.family_name;
    if (family == "unknown") continue;
    const DirHistogram& h = by_dir.at(rec.dir_path);
    if (h.total < p.min_files) continue;
    if (double(h.family_counts.at(family)) / double(h.total) >= p.homogeneity_threshold)
      out.push_back(rec);
  }
  return FileSet(std::move(out));
}

FileSet isolated_members(const FileSet& universe, const IsolatedParams& p) {
  auto by_dir = histogram_index(universe);
  std::vector<FileRecord> out;
  for (const auto& rec : universe) {
    const std::string& family = rec.detected.family_name;
    if (family == "unknown") continue;
    const DirHistogram& h = by_dir.at(rec.dir_path);
    if (h.family_counts.at(family) != 1) continue;
    const uint64_t others = h.total - 1;
    if (others < p.min_other_files || others == 0) continue;
    uint64_t dominant = 0;
    for (const auto& [name, count] : h.family_counts)
      if (name != family) dominant = std::max(dominant, count);
    if (double(dominant) / double(others) >= p.other_dominance) out.push_back(rec);
  }
  return FileSet(std::move(out));
}

}  // namespace zsat
