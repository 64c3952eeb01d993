/* zsat: evidence-tree triage library.
 *
 * Plain C surface over the C++ core: opaque handles, status codes, and
 * caller-freed strings. Every function that can fail takes an optional
 * errbuf/errbuf_len pair and writes a NUL-terminated message into it.
 * Strings returned through char** are heap copies; release them with
 * zsat_string_free().
 */
#ifndef ZSAT_H
#define ZSAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ZSAT_API __declspec(dllexport)
#else
#define ZSAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zsat_status {
  ZSAT_OK = 0,
  ZSAT_ERR_PARSE = 1,            /* malformed config or report JSON */
  ZSAT_ERR_VALIDATION = 2,       /* well-formed but rule-breaking input */
  ZSAT_ERR_IO = 3,               /* missing root, unreadable file, ... */
  ZSAT_ERR_INVALID_ARGUMENT = 4, /* NULL where a value is required, etc. */
  ZSAT_ERR_INTERNAL = 5
} zsat_status;

typedef struct zsat_taxonomy zsat_taxonomy;
typedef struct zsat_report zsat_report;

#define ZSAT_DEFAULT_BUDGET_MS 300000u /* the five-minute field budget */

/* Library version, e.g. "2.0.0". Static storage; do not free. */
ZSAT_API const char* zsat_version(void);

/* ---- ontology ---------------------------------------------------------- */

/* Parse and validate a config; the handle must be freed. */
ZSAT_API zsat_status zsat_taxonomy_load(const char* json_text, zsat_taxonomy** out,
                                        char* errbuf, size_t errbuf_len);
ZSAT_API zsat_status zsat_taxonomy_load_file(const char* path, zsat_taxonomy** out,
                                             char* errbuf, size_t errbuf_len);
/* The ontology compiled into the library. */
ZSAT_API zsat_status zsat_taxonomy_default(zsat_taxonomy** out, char* errbuf,
                                           size_t errbuf_len);
ZSAT_API void zsat_taxonomy_free(zsat_taxonomy* t);

/* Canonical JSON for the loaded config (the digest input). */
ZSAT_API zsat_status zsat_taxonomy_serialize(const zsat_taxonomy* t, char** out_json,
                                             char* errbuf, size_t errbuf_len);
/* SHA-256 hex of the canonical form. */
ZSAT_API zsat_status zsat_taxonomy_digest(const zsat_taxonomy* t, char** out_hex,
                                          char* errbuf, size_t errbuf_len);

/* Syntax check plus rule check without the load gate. Returns ZSAT_OK and
 * NULL violations when clean; ZSAT_ERR_VALIDATION with one "element: rule"
 * line per violation when not; ZSAT_ERR_PARSE when the JSON itself is bad. */
ZSAT_API zsat_status zsat_ontology_check(const char* json_text, char** out_violations,
                                         char* errbuf, size_t errbuf_len);

/* ---- scanning ---------------------------------------------------------- */

typedef struct zsat_scan_options {
  const char* root;    /* required: directory to triage */
  uint64_t budget_ms;  /* wall-clock budget; 0 halts immediately */
  uint32_t worker_count;
  int type_only;       /* nonzero: format inventory, no suspicion analysis */
  /* NULL-terminated family-name arrays, both optional. A family named in
   * both is disabled (disable wins). */
  const char* const* enable_families;
  const char* const* disable_families;
} zsat_scan_options;

/* Fill the defaults: five-minute budget, one worker, full analysis. */
ZSAT_API void zsat_scan_options_init(zsat_scan_options* opts);

/* Read-only scan of opts->root. ZSAT_OK covers partial (budget-expired)
 * runs; inspect zsat_report_partial. */
ZSAT_API zsat_status zsat_scan(const zsat_taxonomy* t, const zsat_scan_options* opts,
                               zsat_report** out, char* errbuf, size_t errbuf_len);

ZSAT_API void zsat_report_free(zsat_report* r);
ZSAT_API zsat_status zsat_report_to_json(const zsat_report* r, char** out, char* errbuf,
                                         size_t errbuf_len);
ZSAT_API zsat_status zsat_report_to_text(const zsat_report* r, char** out, char* errbuf,
                                         size_t errbuf_len);
ZSAT_API uint64_t zsat_report_findings_count(const zsat_report* r);
ZSAT_API int zsat_report_partial(const zsat_report* r);
/* "HIGH" or "LOW". Static storage; do not free. */
ZSAT_API const char* zsat_report_recommendation(const zsat_report* r);

/* ---- synthetic corpus -------------------------------------------------- */

typedef struct zsat_corpus_options {
  const char* out_dir; /* required; must be absent or empty */
  uint64_t seed;
  uint64_t innocuous_files;
  uint64_t planted_images;
  uint64_t planted_videos;
  uint64_t planted_keyword_files;
  uint64_t planted_mismatch_files;
  uint64_t directories;  /* includes the corpus root; >= 1 */
  const char* keyword;   /* NULL: "secret" */
} zsat_corpus_options;

ZSAT_API void zsat_corpus_options_init(zsat_corpus_options* opts);

/* Generate a tree plus ground-truth manifest; hands back the manifest path. */
ZSAT_API zsat_status zsat_corpus_generate(const zsat_corpus_options* opts,
                                          char** out_manifest_path, char* errbuf,
                                          size_t errbuf_len);

/* ---- benchmarking ------------------------------------------------------ */

/* mode: "both", "filtered", or "type-only". Interleaves the modes repeat
 * times and emits runs, medians, and (for "both") the overhead ratio as
 * JSON. opts->type_only is ignored here. */
ZSAT_API zsat_status zsat_bench(const zsat_taxonomy* t, const zsat_scan_options* opts,
                                uint32_t repeat, const char* mode, char** out_json,
                                char* errbuf, size_t errbuf_len);

/* ---- memory ------------------------------------------------------------ */

ZSAT_API void zsat_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ZSAT_H */
