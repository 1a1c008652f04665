#ifndef DTORIC_H
#define DTORIC_H

/* Generated with cbindgen; edit src/lib.rs instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum DtoricStatus {
  DTORIC_STATUS_OK = 0,
  DTORIC_STATUS_INTERNAL_ERROR = 1,
  DTORIC_STATUS_INVALID_INPUT = 2,
  DTORIC_STATUS_NULL_POINTER = 3,
  DTORIC_STATUS_LIMIT_EXCEEDED = 4,
} DtoricStatus;

/**
 * Opaque analysis context.
 */
typedef struct DtoricContext DtoricContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message for this thread, or NULL. Valid until the next failing
 * call on the same thread; do not free.
 */
const char *dtoric_last_error(void);

/**
 * Build a context from a row-major `rows x cols` integer matrix whose
 * columns generate the full integer lattice and span a pointed cone.
 *
 * # Safety
 * `entries` must point to `rows * cols` readable values and `out` must be a
 * valid pointer; the returned context must be released with
 * `dtoric_context_free`.
 */
enum DtoricStatus dtoric_context_new(const int64_t *entries,
                                     uintptr_t rows,
                                     uintptr_t cols,
                                     struct DtoricContext **out);

/**
 * Release a context created by `dtoric_context_new`.
 *
 * # Safety
 * `ctx` must be a pointer previously returned by `dtoric_context_new` and
 * not yet freed; NULL is ignored.
 */
void dtoric_context_free(struct DtoricContext *ctx);

/**
 * Release a string returned through an out-pointer.
 *
 * # Safety
 * `s` must originate from this library and not be freed twice; NULL is
 * ignored.
 */
void dtoric_string_free(char *s);

/**
 * Ambient dimension d.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum DtoricStatus dtoric_dim(const struct DtoricContext *ctx, uintptr_t *out);

/**
 * Number of facets of the cone.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum DtoricStatus dtoric_facet_count(const struct DtoricContext *ctx, uintptr_t *out);

/**
 * Whether the cone is simplicial (1) or not (0).
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum DtoricStatus dtoric_is_simplicial(const struct DtoricContext *ctx, int32_t *out);

/**
 * Exact semigroup membership of an integer point of length d.
 *
 * # Safety
 * `point` must hold `len` readable values; `ctx` live, `out` valid.
 */
enum DtoricStatus dtoric_member(const struct DtoricContext *ctx,
                                const int64_t *point,
                                uintptr_t len,
                                int32_t *out);

/**
 * Whether two parameters (comma-separated rationals, e.g. "1/2,0") label
 * isomorphic systems.
 *
 * # Safety
 * `alpha`, `beta` must be NUL-terminated strings; `ctx` live, `out` valid.
 */
enum DtoricStatus dtoric_equivalent(const struct DtoricContext *ctx,
                                    const char *alpha,
                                    const char *beta,
                                    int32_t *out);

/**
 * Whether the class of a parameter is extreme.
 *
 * # Safety
 * `alpha` must be a NUL-terminated string; `ctx` live, `out` valid.
 */
enum DtoricStatus dtoric_is_extreme(const struct DtoricContext *ctx,
                                    const char *alpha,
                                    int32_t *out);

/**
 * Whether the strict sign system of a parameter is feasible.
 *
 * # Safety
 * `alpha` must be a NUL-terminated string; `ctx` live, `out` valid.
 */
enum DtoricStatus dtoric_rpos_nonempty(const struct DtoricContext *ctx,
                                       const char *alpha,
                                       int32_t *out);

/**
 * Simplicity verdict: 1 = simple on the window, 0 = certified not simple.
 * Pass `window <= 0` for the default window bound.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum DtoricStatus dtoric_is_simple(const struct DtoricContext *ctx, int64_t window, int32_t *out);

/**
 * Full analysis report as a JSON string (free with `dtoric_string_free`).
 * Pass `window <= 0` for the default window bound.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum DtoricStatus dtoric_analyze_json(const struct DtoricContext *ctx, int64_t window, char **out);

/**
 * All E-sets of a parameter as a JSON string (free with
 * `dtoric_string_free`).
 *
 * # Safety
 * `alpha` must be a NUL-terminated string; `ctx` live, `out` valid.
 */
enum DtoricStatus dtoric_signature_json(const struct DtoricContext *ctx,
                                        const char *alpha,
                                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DTORIC_H */
