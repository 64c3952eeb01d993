#include "scanner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

#include "detect.hpp"
#include "errors.hpp"
#include "filters.hpp"

namespace zsat {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct DirTask {
  fs::path abs;
  std::string rel;  // "" at the scan root
};

struct WorkerAccum {
  std::vector<FileRecord> records;
  std::vector<std::string> complete_dirs;
  std::vector<ScanWarning> warnings;
  uint64_t files_seen = 0;
  uint64_t dirs_seen = 0;
  uint64_t bytes_seen = 0;
  uint64_t files_matched = 0;
};

struct DirEntry {
  std::string name;
  bool is_dir = false;
  bool is_regular = false;
  uint64_t size = 0;
};

class Traversal {
 public:
  Traversal(const ScanConfig& cfg, const Taxonomy& t)
      : cfg_(cfg), detector_(t), deadline_(Clock::now() + std::chrono::milliseconds(cfg.budget_ms)) {}

  detail::TraversalResult run() {
    std::error_code ec;
    // The root argument itself may be a symlink; links inside the tree are not
    // followed.
    if (!fs::is_directory(fs::status(cfg_.root, ec)))
      throw IoError("scan root is not a directory: " + cfg_.root.string());
    (void)fs::directory_iterator(cfg_.root, ec);
    if (ec) throw IoError("scan root is not listable: " + cfg_.root.string() + ": " + ec.message());

    stack_.push_back({cfg_.root, ""});
    const uint32_t n = std::max<uint32_t>(1, cfg_.worker_count);
    std::vector<WorkerAccum> accums(n);
    std::vector<std::thread> threads;
    for (uint32_t i = 0; i < n; ++i)
      threads.emplace_back([this, &accums, i] { work(accums[i]); });
    for (auto& th : threads) th.join();

    detail::TraversalResult out;
    out.stats.partial = cancel_.load();
    for (auto& acc : accums) {
      out.stats.files_seen += acc.files_seen;
      out.stats.dirs_seen += acc.dirs_seen;
      out.stats.bytes_seen += acc.bytes_seen;
      out.stats.files_matched += acc.files_matched;
      std::move(acc.records.begin(), acc.records.end(), std::back_inserter(out.records));
      std::move(acc.warnings.begin(), acc.warnings.end(),
                std::back_inserter(out.stats.warnings));
      out.complete_dirs.insert(acc.complete_dirs.begin(), acc.complete_dirs.end());
    }
    std::sort(out.stats.warnings.begin(), out.stats.warnings.end(),
              [](const ScanWarning& a, const ScanWarning& b) {
                return std::tie(a.path, a.message) < std::tie(b.path, b.message);
              });
    return out;
  }

 private:
  bool expired() {
    if (Clock::now() >= deadline_) {
      cancel_.store(true);
      cv_.notify_all();
      return true;
    }
    return cancel_.load();
  }

  void work(WorkerAccum& acc) {
    for (;;) {
      expired();
      DirTask task;
      {
        std::unique_lock lk(mu_);
        cv_.wait(lk, [this] {
          return cancel_.load() || !stack_.empty() || active_ == 0;
        });
        if (cancel_.load() || stack_.empty()) return;
        task = std::move(stack_.back());
        stack_.pop_back();
        active_++;
      }
      std::vector<DirTask> children = process_dir(task, acc);
      {
        std::unique_lock lk(mu_);
        if (!cancel_.load()) {
          // Reverse order keeps LIFO pops in sorted order: depth-first.
          for (auto it = children.rbegin(); it != children.rend(); ++it)
            stack_.push_back(std::move(*it));
        }
        active_--;
      }
      cv_.notify_all();
    }
  }

  std::vector<DirTask> process_dir(const DirTask& task, WorkerAccum& acc) {
    acc.dirs_seen++;

    std::vector<DirEntry> entries;
    std::error_code ec;
    fs::directory_iterator it(task.abs, ec);
    if (ec) {
      acc.warnings.push_back({task.rel, "cannot list directory: " + ec.message()});
      acc.complete_dirs.push_back(task.rel);
      return {};
    }
    for (const auto& de : it) {
      DirEntry e;
      e.name = de.path().filename().string();
      fs::file_status st = de.symlink_status(ec);  // never follow links
      if (ec) continue;
      e.is_dir = fs::is_directory(st);
      e.is_regular = fs::is_regular_file(st);
      if (e.is_regular) {
        uint64_t sz = de.file_size(ec);
        e.size = ec ? 0 : sz;
      }
      entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(),
              [](const DirEntry& a, const DirEntry& b) { return a.name < b.name; });

    std::vector<DirTask> children;
    bool complete = true;
    for (const auto& e : entries) {
      if (expired()) {
        complete = false;
        break;
      }
      const std::string rel = task.rel.empty() ? e.name : task.rel + "/" + e.name;
      if (e.is_dir) {
        if (!detail::excluded_by_prefix(rel, detector_.taxonomy().location_rules.exclude_prefixes))
          children.push_back({task.abs / e.name, rel});
        continue;
      }
      if (!e.is_regular) continue;  // sockets, fifos, symlinks: not evidence files

      acc.files_seen++;
      acc.bytes_seen += e.size;
      FileRecord rec;
      rec.rel_path = rel;
      rec.dir_path = task.rel;
      rec.size_bytes = e.size;
      rec.extension = extension_of(e.name);
      try {
        auto header = read_header(task.abs / e.name);
        rec.detected = detector_.detect(header, rec.extension);
      } catch (const IoError& err) {
        acc.warnings.push_back({rel, err.what()});
        continue;
      }
      if (rec.detected.family_name != "unknown" &&
          family_enabled(detector_.taxonomy(), rec.detected.family_name,
                         &cfg_.enabled_family_overrides))
        acc.files_matched++;
      acc.records.push_back(std::move(rec));
    }
    if (complete) acc.complete_dirs.push_back(task.rel);
    return children;
  }

  const ScanConfig& cfg_;
  Detector detector_;
  Clock::time_point deadline_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<DirTask> stack_;
  size_t active_ = 0;
  std::atomic<bool> cancel_{false};
};

TriageReport run_scan(const ScanConfig& cfg, const Taxonomy& t, bool type_only) {
  const auto start = Clock::now();
  detail::TraversalResult tr = detail::traverse(cfg, t);
  TriageReport report = detail::assemble(cfg, t, std::move(tr), type_only);
  report.stats.elapsed_ms = uint64_t(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
  return report;
}

}  // namespace

namespace detail {

bool excluded_by_prefix(const std::string& rel_path,
                        const std::vector<std::string>& prefixes) {
  const std::string path = to_lower(rel_path) + "/";
  for (const auto& raw : prefixes) {
    if (raw.empty()) continue;
    std::string prefix = to_lower(raw);
    if (prefix.back() != '/') prefix += '/';
    if (path.size() >= prefix.size() && path.compare(0, prefix.size(), prefix) == 0)
      return true;
  }
  return false;
}

TraversalResult traverse(const ScanConfig& cfg, const Taxonomy& t) {
  return Traversal(cfg, t).run();
}

TriageReport assemble(const ScanConfig& cfg, const Taxonomy& t, TraversalResult tr,
                      bool type_only) {
  const FamilyOverrides* overrides = &cfg.enabled_family_overrides;
  std::vector<ReportFinding> findings;

  if (type_only) {
    for (const auto& rec : tr.records) {
      if (rec.detected.family_name == "unknown" ||
          !family_enabled(t, rec.detected.family_name, overrides))
        continue;
      ReportFinding f;
      f.path = rec.rel_path;
      f.family = rec.detected.family_name;
      f.format = rec.detected.format_name;
      f.size_bytes = rec.size_bytes;
      findings.push_back(std::move(f));
    }
  } else {
    std::vector<FileRecord> settled;
    for (const auto& rec : tr.records)
      if (tr.complete_dirs.count(rec.dir_path)) settled.push_back(rec);
    FileSet settled_universe(std::move(settled));
    FileSet in_group = grouped_members(settled_universe, t.grouped);
    FileSet alone = isolated_members(settled_universe, t.isolated);

    for (const auto& rec : tr.records) {
      auto finding = evaluate(rec, t, in_group.contains(rec.rel_path),
                              alone.contains(rec.rel_path), overrides);
      if (finding) findings.push_back(to_report_finding(*finding));
    }
  }

  ScanStats stats = std::move(tr.stats);
  return build_report(cfg.root.string(), t, std::move(stats), std::move(findings));
}

}  // namespace detail

TriageReport scan(const ScanConfig& cfg, const Taxonomy& t) {
  return run_scan(cfg, t, false);
}

TriageReport scan_type_only(const ScanConfig& cfg, const Taxonomy& t) {
  return run_scan(cfg, t, true);
}

}  // namespace zsat
