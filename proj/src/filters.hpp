#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "detect.hpp"
#include "taxonomy.hpp"

namespace zsat {

struct FileRecord {
  std::string rel_path;
  std::string dir_path;  // parent of rel_path, "" at the scan root
  uint64_t size_bytes = 0;
  std::string extension;
  DetectedFormat detected;

  bool operator==(const FileRecord&) const = default;
};

// Immutable set of records keyed by rel_path, kept sorted for cheap algebra.
class FileSet {
 public:
  FileSet() = default;
  explicit FileSet(std::vector<FileRecord> records);

  const std::vector<FileRecord>& members() const { return members_; }
  const FileRecord* find(std::string_view rel_path) const;
  bool contains(std::string_view rel_path) const { return find(rel_path) != nullptr; }
  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool operator==(const FileSet&) const = default;

 private:
  std::vector<FileRecord> members_;
};

enum class CombineMode { UNION, SYMMETRIC_DIFFERENCE, INTERSECTION, LEFT_MINUS };

using FilePredicate = std::function<bool(const FileRecord&)>;

struct IncludeExpr {
  FilePredicate pred;
};
struct ExcludeExpr {
  FilePredicate pred;
};
struct GroupedExpr {
  GroupedParams params;
};
struct IsolatedExpr {
  IsolatedParams params;
};
struct CombineExpr;

using FilterExpr =
    std::variant<IncludeExpr, ExcludeExpr, GroupedExpr, IsolatedExpr, CombineExpr>;

struct CombineExpr {
  std::shared_ptr<FilterExpr> left;
  std::shared_ptr<FilterExpr> right;
  CombineMode mode = CombineMode::INTERSECTION;
};

FilterExpr include(FilePredicate pred);
FilterExpr exclude(FilePredicate pred);
FilterExpr grouped(GroupedParams params);
FilterExpr isolated(IsolatedParams params);
FilterExpr combine_expr(FilterExpr left, FilterExpr right, CombineMode mode);

struct DirHistogram {
  std::string dir_path;
  std::map<std::string, uint64_t> family_counts;  // "unknown" is a bucket too
  uint64_t total = 0;
};

FileSet apply(const FilterExpr& expr, const FileSet& universe);
FileSet combine(const FileSet& a, const FileSet& b, CombineMode mode);

// One histogram per distinct dir_path, sorted by dir_path.
std::vector<DirHistogram> dir_histograms(const FileSet& universe);

// Files sitting in a directory that is near-uniformly their own family.
FileSet grouped_members(const FileSet& universe, const GroupedParams& p);

// Files that are the lone representative of their family in a directory
// otherwise dominated by one other kind.
FileSet isolated_members(const FileSet& universe, const IsolatedParams& p);

}  // namespace zsat
