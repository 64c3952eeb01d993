#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zsat/zsat.h"

namespace {

// Exit codes: 0 done (partial counts as done), 2 config trouble, 3 fatal
// I/O, 4 validate found violations.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitViolations = 4;

struct TaxonomyHandle {
  zsat_taxonomy* ptr = nullptr;
  ~TaxonomyHandle() { zsat_taxonomy_free(ptr); }
};

struct ReportHandle {
  zsat_report* ptr = nullptr;
  ~ReportHandle() { zsat_report_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { zsat_string_free(ptr); }
};

int status_to_exit(zsat_status s) {
  switch (s) {
    case ZSAT_OK: return kExitOk;
    case ZSAT_ERR_PARSE:
    case ZSAT_ERR_VALIDATION:
    case ZSAT_ERR_INVALID_ARGUMENT: return kExitConfig;
    case ZSAT_ERR_IO:
    case ZSAT_ERR_INTERNAL: return kExitIo;
  }
  return kExitIo;
}

int complain(zsat_status s, const char* errbuf) {
  std::fprintf(stderr, "error: %s\n", errbuf[0] ? errbuf : "unspecified failure");
  return status_to_exit(s);
}

// Flag wins over the ZSAT_ONTOLOGY environment variable; with neither, the
// embedded defaults are used.
int load_taxonomy(const std::string& flag_path, TaxonomyHandle& t, char* errbuf,
                  size_t errbuf_len) {
  std::string path = flag_path;
  if (path.empty()) {
    if (const char* env = std::getenv("ZSAT_ONTOLOGY")) path = env;
  }
  zsat_status s = path.empty()
                      ? zsat_taxonomy_default(&t.ptr, errbuf, errbuf_len)
                      : zsat_taxonomy_load_file(path.c_str(), &t.ptr, errbuf, errbuf_len);
  if (s != ZSAT_OK) return complain(s, errbuf);
  return kExitOk;
}

int emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return kExitOk;
  }
  std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", output_path.c_str());
    return kExitIo;
  }
  return kExitOk;
}

struct ScanFlags {
  std::string root;
  std::string ontology;
  std::string output;
  std::string format = "text";
  uint64_t budget_secs = 300;
  uint32_t workers = 1;
  bool enable_music = false;
};

void add_common_scan_flags(CLI::App* cmd, ScanFlags& f) {
  cmd->add_option("--root", f.root, "evidence directory to scan")->required();
  cmd->add_option("--ontology", f.ontology, "ontology config file (default: built in)");
  cmd->add_option("--budget-secs", f.budget_secs, "wall-clock budget in seconds")
      ->capture_default_str();
  cmd->add_option("--workers", f.workers, "traversal worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--enable-music", f.enable_music, "scan the music family too");
  cmd->add_option("--output", f.output, "write the result here instead of stdout");
}

void fill_options(const ScanFlags& f, zsat_scan_options& opts) {
  static const char* kMusicOn[] = {"music", nullptr};
  zsat_scan_options_init(&opts);
  opts.root = f.root.c_str();
  opts.budget_ms = f.budget_secs * 1000;
  opts.worker_count = f.workers;
  if (f.enable_music) opts.enable_families = kMusicOn;
}

int run_scan(const ScanFlags& f) {
  char errbuf[512] = {0};
  TaxonomyHandle t;
  if (int rc = load_taxonomy(f.ontology, t, errbuf, sizeof errbuf); rc != kExitOk) return rc;

  zsat_scan_options opts;
  fill_options(f, opts);
  ReportHandle report;
  zsat_status s = zsat_scan(t.ptr, &opts, &report.ptr, errbuf, sizeof errbuf);
  if (s != ZSAT_OK) return complain(s, errbuf);

  OwnedString text;
  s = f.format == "json" ? zsat_report_to_json(report.ptr, &text.ptr, errbuf, sizeof errbuf)
                         : zsat_report_to_text(report.ptr, &text.ptr, errbuf, sizeof errbuf);
  if (s != ZSAT_OK) return complain(s, errbuf);
  return emit(text.ptr, f.output);
}

int run_validate(const std::string& flag_path) {
  std::string path = flag_path;
  if (path.empty()) {
    if (const char* env = std::getenv("ZSAT_ONTOLOGY")) path = env;
  }
  if (path.empty()) {
    std::fprintf(stderr, "error: validate needs --ontology or ZSAT_ONTOLOGY\n");
    return kExitConfig;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read %s\n", path.c_str());
    return kExitIo;
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  char errbuf[512] = {0};
  OwnedString violations;
  zsat_status s = zsat_ontology_check(text.c_str(), &violations.ptr, errbuf, sizeof errbuf);
  if (s == ZSAT_OK) {
    std::printf("ok: %s passes every rule\n", path.c_str());
    return kExitOk;
  }
  if (s == ZSAT_ERR_VALIDATION && violations.ptr) {
    std::fputs(violations.ptr, stdout);
    return kExitViolations;
  }
  return complain(s, errbuf);
}

struct GenFlags {
  std::string out_dir;
  std::string keyword = "secret";
  uint64_t seed = 0;
  uint64_t innocuous = 0;
  uint64_t images = 0;
  uint64_t videos = 0;
  uint64_t keyword_files = 0;
  uint64_t mismatch_files = 0;
  uint64_t directories = 1;
};

int run_gen(const GenFlags& f) {
  zsat_corpus_options opts;
  zsat_corpus_options_init(&opts);
  opts.out_dir = f.out_dir.c_str();
  opts.seed = f.seed;
  opts.innocuous_files = f.innocuous;
  opts.planted_images = f.images;
  opts.planted_videos = f.videos;
  opts.planted_keyword_files = f.keyword_files;
  opts.planted_mismatch_files = f.mismatch_files;
  opts.directories = f.directories;
  opts.keyword = f.keyword.c_str();

  char errbuf[512] = {0};
  OwnedString manifest;
  zsat_status s = zsat_corpus_generate(&opts, &manifest.ptr, errbuf, sizeof errbuf);
  if (s != ZSAT_OK) return complain(s, errbuf);
  std::printf("%s\n", manifest.ptr);
  return kExitOk;
}

int run_bench(const ScanFlags& f, uint32_t repeat, const std::string& mode) {
  char errbuf[512] = {0};
  TaxonomyHandle t;
  if (int rc = load_taxonomy(f.ontology, t, errbuf, sizeof errbuf); rc != kExitOk) return rc;

  zsat_scan_options opts;
  fill_options(f, opts);
  OwnedString json;
  zsat_status s =
      zsat_bench(t.ptr, &opts, repeat, mode.c_str(), &json.ptr, errbuf, sizeof errbuf);
  if (s != ZSAT_OK) return complain(s, errbuf);
  return emit(json.ptr, f.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"triage scanner: finds possibly suspicious files fast"};
  app.set_version_flag("--version", zsat_version());
  app.require_subcommand(1);

  ScanFlags scan_flags;
  CLI::App* scan_cmd = app.add_subcommand("scan", "scan a directory tree and report");
  add_common_scan_flags(scan_cmd, scan_flags);
  scan_cmd->add_option("--format", scan_flags.format, "report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string validate_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "check an ontology config");
  validate_cmd->add_option("--ontology", validate_path, "config file to check");

  GenFlags gen_flags;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a synthetic test corpus");
  gen_cmd->add_option("--out", gen_flags.out_dir, "corpus root to create")->required();
  gen_cmd->add_option("--seed", gen_flags.seed, "generator seed")->capture_default_str();
  gen_cmd->add_option("--innocuous", gen_flags.innocuous, "innocuous file count")
      ->capture_default_str();
  gen_cmd->add_option("--plant-images", gen_flags.images, "oversized image count")
      ->capture_default_str();
  gen_cmd->add_option("--plant-videos", gen_flags.videos, "oversized video count")
      ->capture_default_str();
  gen_cmd->add_option("--plant-keyword-files", gen_flags.keyword_files,
                      "images with the keyword in the name")
      ->capture_default_str();
  gen_cmd->add_option("--plant-mismatch-files", gen_flags.mismatch_files,
                      "image content behind foreign extensions")
      ->capture_default_str();
  gen_cmd->add_option("--directories", gen_flags.directories,
                      "directory count, corpus root included")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--keyword", gen_flags.keyword, "keyword for planted names")
      ->capture_default_str();

  ScanFlags bench_flags;
  uint32_t repeat = 3;
  std::string bench_mode = "both";
  CLI::App* bench_cmd = app.add_subcommand("bench", "time filtered vs type-only scans");
  add_common_scan_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("--repeat", repeat, "runs per mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--mode", bench_mode, "which modes to time")
      ->check(CLI::IsMember({"both", "filtered", "type-only"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (app.got_subcommand(scan_cmd)) return run_scan(scan_flags);
  if (app.got_subcommand(validate_cmd)) return run_validate(validate_path);
  if (app.got_subcommand(gen_cmd)) return run_gen(gen_flags);
  if (app.got_subcommand(bench_cmd)) return run_bench(bench_flags, repeat, bench_mode);
  return kExitConfig;
}
