/* C interface to the gramdet library. All handles are opaque; every
 * function returning gd_status leaves a message for gd_last_error() on
 * failure. Strings returned through char** must be released with
 * gd_string_free. */
#ifndef GRAMDET_GRAMDET_H
#define GRAMDET_GRAMDET_H

#include <stddef.h>
#include <stdint.h>

#if defined(GRAMDET_BUILDING)
#define GRAMDET_EXPORT __attribute__((visibility("default")))
#else
#define GRAMDET_EXPORT
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gd_status {
  GD_OK = 0,
  GD_ERR_INVALID_ARGUMENT = 1,
  GD_ERR_PARSE = 2,
  GD_ERR_UNSUPPORTED_N = 3,
  GD_ERR_RESOURCE_LIMIT = 4,
  GD_ERR_NOT_DIVISIBLE = 5,
  GD_ERR_ZERO_DIVISOR = 6,
  GD_ERR_INVALID_DIAGRAM = 7,
  GD_ERR_CLASSIFICATION = 8,
  GD_ERR_IO = 9,
  GD_ERR_INTERNAL = 10
} gd_status;

typedef enum gd_verdict {
  GD_VERIFIED = 0,
  GD_REFUTED = 1,
  GD_INCONCLUSIVE = 2
} gd_verdict;

typedef struct gd_context gd_context;
typedef struct gd_poly gd_poly;
typedef struct gd_basis gd_basis;
typedef struct gd_matrix gd_matrix;
typedef struct gd_report gd_report;

GRAMDET_EXPORT const char* gd_version(void);
GRAMDET_EXPORT const char* gd_status_name(gd_status status);
/* Message of the last failure on the calling thread; empty if none. */
GRAMDET_EXPORT const char* gd_last_error(void);
GRAMDET_EXPORT void gd_string_free(char* s);

/* Context: resource limits, worker count and cache location. */
GRAMDET_EXPORT gd_status gd_context_new(gd_context** out);
GRAMDET_EXPORT void gd_context_free(gd_context* ctx);
GRAMDET_EXPORT gd_status gd_context_set_jobs(gd_context* ctx, unsigned jobs);
GRAMDET_EXPORT gd_status gd_context_set_max_n(gd_context* ctx, int max_n);
GRAMDET_EXPORT gd_status gd_context_set_max_work(gd_context* ctx, double field_ops);
/* NULL or "" falls back to $GRAMDET_CACHE_DIR; caching is off if neither is set. */
GRAMDET_EXPORT gd_status gd_context_set_cache_dir(gd_context* ctx, const char* dir);

/* Polynomials in Z[d,z,x,y,w]. */
GRAMDET_EXPORT gd_status gd_poly_parse(const char* text, gd_poly** out);
GRAMDET_EXPORT gd_status gd_poly_to_string(const gd_poly* p, char** out);
GRAMDET_EXPORT gd_status gd_poly_add(const gd_poly* a, const gd_poly* b, gd_poly** out);
GRAMDET_EXPORT gd_status gd_poly_sub(const gd_poly* a, const gd_poly* b, gd_poly** out);
GRAMDET_EXPORT gd_status gd_poly_mul(const gd_poly* a, const gd_poly* b, gd_poly** out);
/* GD_ERR_NOT_DIVISIBLE when b does not divide a. */
GRAMDET_EXPORT gd_status gd_poly_div_exact(const gd_poly* a, const gd_poly* b, gd_poly** out);
GRAMDET_EXPORT int gd_poly_equal(const gd_poly* a, const gd_poly* b);
/* name: type-a, type-b, qi-mb, mb1-conjecture, tilde-conjecture,
 * maintheorem-factor, prop1-divisor, prop2-divisor, prop3-divisor */
GRAMDET_EXPORT gd_status gd_poly_formula(const char* name, int n, gd_poly** out);
GRAMDET_EXPORT void gd_poly_free(gd_poly* p);

/* Bases. kind: disk, annulus, mobius, mb1; k < 0 selects all of Mb_n for mobius. */
GRAMDET_EXPORT gd_status gd_basis_enumerate(const gd_context* ctx, const char* kind, int n, int k, gd_basis** out);
GRAMDET_EXPORT size_t gd_basis_size(const gd_basis* b);
GRAMDET_EXPORT gd_status gd_basis_element(const gd_basis* b, size_t i, char** out);
/* format: text, json */
GRAMDET_EXPORT gd_status gd_basis_write(const gd_basis* b, const char* format, char** out);
GRAMDET_EXPORT void gd_basis_free(gd_basis* b);

/* Gram matrices. form: A, Agen, B, Mb, Mb1, MbN1 (any case); subst like
 * "y=0,w=1" or NULL. */
GRAMDET_EXPORT gd_status gd_matrix_build(const gd_context* ctx, const char* form, int n, const char* subst,
                                         gd_matrix** out);
GRAMDET_EXPORT size_t gd_matrix_dim(const gd_matrix* m);
GRAMDET_EXPORT gd_status gd_matrix_entry(const gd_matrix* m, size_t i, size_t j, char** out);
/* format: json, csv, latex */
GRAMDET_EXPORT gd_status gd_matrix_write(const gd_matrix* m, const char* format, char** out);
GRAMDET_EXPORT gd_status gd_matrix_det(const gd_context* ctx, const gd_matrix* m, gd_poly** out);
/* Compares det(m) with candidate by evaluation. randomized != 0 uses random
 * points modulo a 62-bit prime; otherwise an integer grid. */
GRAMDET_EXPORT gd_status gd_matrix_verify_det(const gd_context* ctx, const gd_matrix* m, const gd_poly* candidate,
                                              int randomized, uint64_t seed, int trials, gd_report** out);
GRAMDET_EXPORT void gd_matrix_free(gd_matrix* m);

/* Claims. claim: type-a, type-b, qi-conjecture, prop1, prop2, prop3,
 * main-lemma, main-theorem, mb1-conjecture, tilde-conjecture;
 * method: auto, exact, randomized. */
GRAMDET_EXPORT gd_status gd_claim_run(const gd_context* ctx, const char* claim, int n, const char* method,
                                      uint64_t seed, int trials, gd_report** out);
GRAMDET_EXPORT gd_verdict gd_report_verdict(const gd_report* r);
GRAMDET_EXPORT gd_status gd_report_json(const gd_report* r, char** out);
GRAMDET_EXPORT void gd_report_free(gd_report* r);

#ifdef __cplusplus
}
#endif

#endif
