#include "zsat/zsat.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bench.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "report.hpp"
#include "scanner.hpp"
#include "taxonomy.hpp"

struct zsat_taxonomy {
  zsat::Taxonomy value;
};

struct zsat_report {
  zsat::TriageReport value;
};

namespace {

void put_error(char* errbuf, size_t errbuf_len, const char* msg) {
  if (!errbuf || errbuf_len == 0) return;
  std::snprintf(errbuf, errbuf_len, "%s", msg);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, translating exceptions into status codes and errbuf text.
template <typename Fn>
zsat_status guarded(char* errbuf, size_t errbuf_len, Fn&& fn) {
  try {
    return fn();
  } catch (const zsat::ParseError& e) {
    put_error(errbuf, errbuf_len, e.what());
    return ZSAT_ERR_PARSE;
  } catch (const zsat::ValidationError& e) {
    put_error(errbuf, errbuf_len, e.what());
    return ZSAT_ERR_VALIDATION;
  } catch (const zsat::IoError& e) {
    put_error(errbuf, errbuf_len, e.what());
    return ZSAT_ERR_IO;
  } catch (const std::invalid_argument& e) {
    put_error(errbuf, errbuf_len, e.what());
    return ZSAT_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    put_error(errbuf, errbuf_len, e.what());
    return ZSAT_ERR_INTERNAL;
  } catch (...) {
    put_error(errbuf, errbuf_len, "unknown failure");
    return ZSAT_ERR_INTERNAL;
  }
}

std::string slurp(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw zsat::IoError(std::string("cannot read file: ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw zsat::IoError(std::string("read failed: ") + path);
  return buf.str();
}

zsat::ScanConfig to_config(const zsat_scan_options& opts) {
  if (!opts.root) throw std::invalid_argument("scan options carry no root");
  zsat::ScanConfig cfg;
  cfg.root = opts.root;
  cfg.budget_ms = opts.budget_ms;
  cfg.worker_count = opts.worker_count ? opts.worker_count : 1;
  for (auto p = opts.enable_families; p && *p; ++p)
    cfg.enabled_family_overrides[*p] = true;
  for (auto p = opts.disable_families; p && *p; ++p)
    cfg.enabled_family_overrides[*p] = false;
  return cfg;
}

}  // namespace

extern "C" {

const char* zsat_version(void) { return zsat::kToolVersion; }

zsat_status zsat_taxonomy_load(const char* json_text, zsat_taxonomy** out, char* errbuf,
                               size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!json_text || !out) throw std::invalid_argument("json_text and out are required");
    *out = new zsat_taxonomy{zsat::load_taxonomy(json_text)};
    return ZSAT_OK;
  });
}

zsat_status zsat_taxonomy_load_file(const char* path, zsat_taxonomy** out, char* errbuf,
                                    size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!path || !out) throw std::invalid_argument("path and out are required");
    *out = new zsat_taxonomy{zsat::load_taxonomy(slurp(path))};
    return ZSAT_OK;
  });
}

zsat_status zsat_taxonomy_default(zsat_taxonomy** out, char* errbuf, size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!out) throw std::invalid_argument("out is required");
    *out = new zsat_taxonomy{zsat::default_taxonomy()};
    return ZSAT_OK;
  });
}

void zsat_taxonomy_free(zsat_taxonomy* t) { delete t; }

zsat_status zsat_taxonomy_serialize(const zsat_taxonomy* t, char** out_json, char* errbuf,
                                    size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!t || !out_json) throw std::invalid_argument("taxonomy and out_json are required");
    *out_json = dup_string(zsat::serialize(t->value));
    return *out_json ? ZSAT_OK : ZSAT_ERR_INTERNAL;
  });
}

zsat_status zsat_taxonomy_digest(const zsat_taxonomy* t, char** out_hex, char* errbuf,
                                 size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!t || !out_hex) throw std::invalid_argument("taxonomy and out_hex are required");
    *out_hex = dup_string(zsat::taxonomy_digest(t->value));
    return *out_hex ? ZSAT_OK : ZSAT_ERR_INTERNAL;
  });
}

zsat_status zsat_ontology_check(const char* json_text, char** out_violations, char* errbuf,
                                size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!json_text) throw std::invalid_argument("json_text is required");
    if (out_violations) *out_violations = nullptr;
    zsat::Taxonomy t = zsat::parse_taxonomy(json_text);
    auto violations = zsat::validate(t);
    if (violations.empty()) return ZSAT_OK;
    std::string lines;
    for (const auto& v : violations) {
      lines += v.element + ": " + v.rule + "\n";
    }
    if (out_violations) *out_violations = dup_string(lines);
    put_error(errbuf, errbuf_len, "ontology violates its rules");
    return ZSAT_ERR_VALIDATION;
  });
}

void zsat_scan_options_init(zsat_scan_options* opts) {
  if (!opts) return;
  *opts = zsat_scan_options{};
  opts->budget_ms = ZSAT_DEFAULT_BUDGET_MS;
  opts->worker_count = 1;
}

zsat_status zsat_scan(const zsat_taxonomy* t, const zsat_scan_options* opts,
                      zsat_report** out, char* errbuf, size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!t || !opts || !out)
      throw std::invalid_argument("taxonomy, options, and out are required");
    zsat::ScanConfig cfg = to_config(*opts);
    zsat::TriageReport report = opts->type_only ? zsat::scan_type_only(cfg, t->value)
                                                : zsat::scan(cfg, t->value);
    *out = new zsat_report{std::move(report)};
    return ZSAT_OK;
  });
}

void zsat_report_free(zsat_report* r) { delete r; }

zsat_status zsat_report_to_json(const zsat_report* r, char** out, char* errbuf,
                                size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!r || !out) throw std::invalid_argument("report and out are required");
    *out = dup_string(zsat::serialize(r->value, zsat::ReportFormat::JSON));
    return *out ? ZSAT_OK : ZSAT_ERR_INTERNAL;
  });
}

zsat_status zsat_report_to_text(const zsat_report* r, char** out, char* errbuf,
                                size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!r || !out) throw std::invalid_argument("report and out are required");
    *out = dup_string(zsat::serialize(r->value, zsat::ReportFormat::TEXT));
    return *out ? ZSAT_OK : ZSAT_ERR_INTERNAL;
  });
}

uint64_t zsat_report_findings_count(const zsat_report* r) {
  return r ? r->value.stats.findings_count : 0;
}

int zsat_report_partial(const zsat_report* r) {
  return r && r->value.stats.partial ? 1 : 0;
}

const char* zsat_report_recommendation(const zsat_report* r) {
  return r ? zsat::recommendation_name(r->value.recommendation) : "LOW";
}

void zsat_corpus_options_init(zsat_corpus_options* opts) {
  if (!opts) return;
  *opts = zsat_corpus_options{};
  opts->directories = 1;
}

zsat_status zsat_corpus_generate(const zsat_corpus_options* opts, char** out_manifest_path,
                                 char* errbuf, size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!opts || !opts->out_dir)
      throw std::invalid_argument("corpus options carry no out_dir");
    zsat::CorpusSpec spec;
    spec.seed = opts->seed;
    spec.innocuous_files = opts->innocuous_files;
    spec.planted_images = opts->planted_images;
    spec.planted_videos = opts->planted_videos;
    spec.planted_keyword_files = opts->planted_keyword_files;
    spec.planted_mismatch_files = opts->planted_mismatch_files;
    spec.directories = opts->directories;
    if (opts->keyword) spec.keyword = opts->keyword;
    zsat::generate(spec, opts->out_dir);
    if (out_manifest_path)
      *out_manifest_path = dup_string(zsat::manifest_path_for(opts->out_dir).string());
    return ZSAT_OK;
  });
}

zsat_status zsat_bench(const zsat_taxonomy* t, const zsat_scan_options* opts,
                       uint32_t repeat, const char* mode, char** out_json, char* errbuf,
                       size_t errbuf_len) {
  return guarded(errbuf, errbuf_len, [&]() -> zsat_status {
    if (!t || !opts || !out_json)
      throw std::invalid_argument("taxonomy, options, and out_json are required");
    zsat::BenchSelection sel = zsat::BenchSelection::BOTH;
    const std::string m = mode ? mode : "both";
    if (m == "both") sel = zsat::BenchSelection::BOTH;
    else if (m == "filtered") sel = zsat::BenchSelection::FILTERED;
    else if (m == "type-only") sel = zsat::BenchSelection::TYPE_ONLY;
    else throw std::invalid_argument("bench mode must be both, filtered, or type-only");
    zsat::BenchResult result = zsat::run_bench(to_config(*opts), t->value, repeat, sel);
    *out_json = dup_string(zsat::bench_to_json(result));
    return *out_json ? ZSAT_OK : ZSAT_ERR_INTERNAL;
  });
}

void zsat_string_free(char* s) { std::free(s); }

}  // extern "C"
