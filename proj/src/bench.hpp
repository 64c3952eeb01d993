#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scanner.hpp"

namespace zsat {

enum class BenchMode { TYPE_ONLY, FILTERED };

struct BenchRecord {
  BenchMode mode = BenchMode::TYPE_ONLY;
  std::vector<uint64_t> elapsed_ms;  // one entry per run
  uint64_t median_ms = 0;
  uint64_t files_seen = 0;

  bool operator==(const BenchRecord&) const = default;
};

enum class BenchSelection { BOTH, FILTERED, TYPE_ONLY };

struct BenchResult {
  uint32_t repeat = 0;
  std::optional<BenchRecord> type_only;
  std::optional<BenchRecord> filtered;
  std::optional<double> ratio;  // filtered / type_only, BOTH runs only
};

// Middle element (lower-middle mean for even counts). Throws on empty input.
uint64_t median_ms(std::vector<uint64_t> runs);

// filtered.median_ms / baseline.median_ms. Throws ValidationError when the
// records saw different file counts (incomparable) or the baseline is zero.
double overhead_ratio(const BenchRecord& filtered, const BenchRecord& baseline);

// Interleaves the two modes (T F T F ...) to damp cache asymmetry.
BenchResult run_bench(const ScanConfig& cfg, const Taxonomy& t, uint32_t repeat,
                      BenchSelection selection = BenchSelection::BOTH);

std::string bench_to_json(const BenchResult& r);

}  // namespace zsat
