#include "bench.hpp"

#include <algorithm>

#include "errors.hpp"

#include <json.hpp>

namespace zsat {

namespace {

using nlohmann::ordered_json;

void note_run(BenchRecord& rec, const TriageReport& report) {
  if (!rec.elapsed_ms.empty() && rec.files_seen != report.stats.files_seen)
    throw ValidationError("bench runs disagree on files_seen; corpus changed mid-bench?");
  rec.files_seen = report.stats.files_seen;
  rec.elapsed_ms.push_back(report.stats.elapsed_ms);
}

ordered_json record_to_json(const BenchRecord& rec) {
  return {{"runs_ms", rec.elapsed_ms},
          {"median_ms", rec.median_ms},
          {"files_seen", rec.files_seen}};
}

}  // namespace

uint64_t median_ms(std::vector<uint64_t> runs) {
  if (runs.empty()) throw ValidationError("median of zero runs");
  std::sort(runs.begin(), runs.end());
  const size_t mid = runs.size() / 2;
  if (runs.size() % 2 == 1) return runs[mid];
  return (runs[mid - 1] + runs[mid]) / 2;
}

double overhead_ratio(const BenchRecord& filtered, const BenchRecord& baseline) {
  if (filtered.files_seen != baseline.files_seen)
    throw ValidationError("bench records are incomparable: files_seen differ");
  if (baseline.median_ms == 0)
    throw ValidationError("baseline median is zero; corpus too small to time");
  return double(filtered.median_ms) / double(baseline.median_ms);
}

BenchResult run_bench(const ScanConfig& cfg, const Taxonomy& t, uint32_t repeat,
                      BenchSelection selection) {
  if (repeat < 1) throw ValidationError("bench repeat must be >= 1");

  BenchResult result;
  result.repeat = repeat;
  const bool want_type = selection != BenchSelection::FILTERED;
  const bool want_filtered = selection != BenchSelection::TYPE_ONLY;
  BenchRecord type_rec{BenchMode::TYPE_ONLY, {}, 0, 0};
  BenchRecord filtered_rec{BenchMode::FILTERED, {}, 0, 0};

  for (uint32_t i = 0; i < repeat; ++i) {
    if (want_type) note_run(type_rec, scan_type_only(cfg, t));
    if (want_filtered) note_run(filtered_rec, scan(cfg, t));
  }

  if (want_type) {
    type_rec.median_ms = median_ms(type_rec.elapsed_ms);
    result.type_only = std::move(type_rec);
  }
  if (want_filtered) {
    filtered_rec.median_ms = median_ms(filtered_rec.elapsed_ms);
    result.filtered = std::move(filtered_rec);
  }
  if (result.type_only && result.filtered)
    result.ratio = overhead_ratio(*result.filtered, *result.type_only);
  return result;
}

std::string bench_to_json(const BenchResult& r) {
  ordered_json doc;
  doc["repeat"] = r.repeat;
  if (r.type_only) doc["type_only"] = record_to_json(*r.type_only);
  if (r.filtered) doc["filtered"] = record_to_json(*r.filtered);
  if (r.ratio) doc["ratio"] = *r.ratio;
  return doc.dump(2) + "\n";
}

}  // namespace zsat
