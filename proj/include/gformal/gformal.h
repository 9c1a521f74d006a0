#ifndef GFORMAL_GFORMAL_H
#define GFORMAL_GFORMAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GFORMAL_API __declspec(dllimport)
#elif defined(GFORMAL_BUILDING)
#define GFORMAL_API __attribute__((visibility("default")))
#else
#define GFORMAL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gformal_status {
  GFORMAL_OK = 0,
  GFORMAL_INVALID_ARGUMENT = 1,
  GFORMAL_DIMENSION_MISMATCH = 2,
  GFORMAL_DEGREE_OUT_OF_RANGE = 3,
  GFORMAL_NOT_HOMOGENEOUS = 4,
  GFORMAL_UNKNOWN_TARGET = 5,
  GFORMAL_MALFORMED_CONFIG = 6,
  GFORMAL_PATTERN_INAPPLICABLE = 7,
  GFORMAL_INCONSISTENT_INPUT = 8,
  GFORMAL_UNSUPPORTED = 9,
  GFORMAL_INTERNAL = 10,
  GFORMAL_OUT_OF_MEMORY = 11
} gformal_status;

typedef enum gformal_format { GFORMAL_FORMAT_HUMAN = 0, GFORMAL_FORMAT_STRUCTURED = 1 } gformal_format;

typedef struct gformal_report gformal_report;
typedef struct gformal_ring gformal_ring;
typedef struct gformal_certificate gformal_certificate;

GFORMAL_API const char* gformal_version(void);
GFORMAL_API const char* gformal_status_name(gformal_status status);
/* Message of the last failed call on this thread; "" if none. */
GFORMAL_API const char* gformal_last_error(void);

/* Runs one command. `config` is YAML (JSON works too); `overrides`, if not
   NULL, is merged over it key by key. */
GFORMAL_API gformal_status gformal_run(const char* config, const char* overrides, gformal_report** out);
/* Rendered report; the string lives as long as the report. */
GFORMAL_API const char* gformal_report_text(const gformal_report* report, gformal_format format);
/* Format and output path requested by the config ("" = stdout). */
GFORMAL_API gformal_format gformal_report_format(const gformal_report* report);
GFORMAL_API const char* gformal_report_output(const gformal_report* report);
GFORMAL_API void gformal_report_free(gformal_report* report);

/* Built-in ring. a, b, c are rationals as text ("3/2") or NULL for 0. */
GFORMAL_API gformal_status gformal_ring_named(const char* name, const char* a, const char* b, const char* c, int p,
                                              int q, gformal_ring** out);
/* "x:2 y:2 | top 6 | vol x^2*y | rel1 ; rel2" */
GFORMAL_API gformal_status gformal_ring_parse(const char* text, gformal_ring** out);
GFORMAL_API const char* gformal_ring_text(const gformal_ring* ring);
/* Writes up to `capacity` Betti numbers; `*count` receives top + 1. */
GFORMAL_API gformal_status gformal_ring_betti(const gformal_ring* ring, int* betti, size_t capacity, size_t* count);
/* Pattern tag, e.g. "TOTARO"; NULL on error. */
GFORMAL_API const char* gformal_ring_pattern(const gformal_ring* ring);
GFORMAL_API void gformal_ring_free(gformal_ring* ring);

GFORMAL_API gformal_status gformal_certify(const gformal_ring* ring, gformal_certificate** out);
/* "INFEASIBLE" or "INCONCLUSIVE". */
GFORMAL_API const char* gformal_certificate_verdict(const gformal_certificate* cert);
GFORMAL_API size_t gformal_certificate_step_count(const gformal_certificate* cert);
GFORMAL_API const char* gformal_certificate_step_id(const gformal_certificate* cert, size_t index);
GFORMAL_API gformal_status gformal_certificate_verify(const gformal_certificate* cert, int trials, uint64_t seed,
                                                      int* accepted);
/* Copy with step `index` altered so that it no longer holds. */
GFORMAL_API gformal_status gformal_certificate_corrupt(const gformal_certificate* cert, size_t index,
                                                       gformal_certificate** out);
GFORMAL_API void gformal_certificate_free(gformal_certificate* cert);

/* Numerical search with default settings apart from restarts and seed.
   `*feasible` is 1 for FEASIBLE_FOUND. */
GFORMAL_API gformal_status gformal_realize(const gformal_ring* ring, int restarts, uint64_t seed, int* feasible,
                                           double* best_residual);

#ifdef __cplusplus
}
#endif

#endif
