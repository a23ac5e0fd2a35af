/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef DOTCHAIN_H
#define DOTCHAIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_INVALID_UTF8 = 2,
  DC_STATUS_DIMENSION_MISMATCH = 3,
  DC_STATUS_ORIGIN_INPUT = 4,
  DC_STATUS_SAME_RADIAL_LINE = 5,
  DC_STATUS_ZERO_ALPHA = 6,
  DC_STATUS_COINCIDENT_POINTS = 7,
  DC_STATUS_DUPLICATE_POINT = 8,
  DC_STATUS_MALFORMED_SCALAR = 9,
  DC_STATUS_DIVISION_BY_ZERO = 10,
  DC_STATUS_INVALID_PARAMETER = 11,
  DC_STATUS_UNSUPPORTED = 12,
  DC_STATUS_PARSE = 13,
  DC_STATUS_IO = 14,
  DC_STATUS_PANIC = 15,
} DcStatus;

typedef enum DcCountMode {
  DC_COUNT_MODE_WITH_REPEATS = 0,
  DC_COUNT_MODE_PAIRWISE_DISTINCT = 1,
} DcCountMode;

// Opaque point-set handle.
typedef struct DcPointSet DcPointSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Owned by the
// library.
const char *dc_last_error_message(void);

// Library version as a static string.
const char *dc_version(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void dc_string_free(char *s);

// Releases a point-set handle. Null is ignored.
//
// # Safety
// `set` must come from this library and not have been freed.
void dc_pointset_free(struct DcPointSet *set);

// Parses a point-set file document.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum DcStatus dc_pointset_from_json(const char *json, struct DcPointSet **out);

// Serializes a set as a point-set file document; free with `dc_string_free`.
//
// # Safety
// `set` must be a live handle; `out` must be writable.
enum DcStatus dc_pointset_to_json(const struct DcPointSet *set, char **out);

// Number of points, or 0 for a null handle.
//
// # Safety
// `set` must be null or a live handle.
size_t dc_pointset_len(const struct DcPointSet *set);

// Ambient dimension, or 0 for a null handle.
//
// # Safety
// `set` must be null or a live handle.
size_t dc_pointset_dim(const struct DcPointSet *set);

// Staircase construction with `alpha1` given as `"p"` or `"p/q"`.
//
// # Safety
// `alpha1` must be a nul-terminated string; `out` must be writable.
enum DcStatus dc_generate_prop3(size_t n, size_t k, const char *alpha1, struct DcPointSet **out);

// # Safety
// `out` must be writable.
enum DcStatus dc_generate_axes2d(size_t n, size_t k, struct DcPointSet **out);

// Three-dimensional construction for the comma-separated targets `alphas`.
//
// # Safety
// `alphas` must be a nul-terminated string; `out` must be writable.
enum DcStatus dc_generate_lenz3d(size_t n, const char *alphas, struct DcPointSet **out);

// # Safety
// `out` must be writable.
enum DcStatus dc_generate_random_disk(size_t n,
                                      uint64_t seed,
                                      uint64_t denom,
                                      struct DcPointSet **out);

// # Safety
// `out` must be writable.
enum DcStatus dc_generate_grid(size_t side, struct DcPointSet **out);

// Counts chains of the comma-separated type `alphas`. The count is
// written as a decimal string; free it with `dc_string_free`.
//
// # Safety
// `set` must be a live handle, `alphas` a nul-terminated string, `out`
// writable.
enum DcStatus dc_count_chains(const struct DcPointSet *set,
                              const char *alphas,
                              bool allow_zero,
                              enum DcCountMode mode,
                              char **out);

// Ordered pairs of distinct points with dot product `alpha`.
//
// # Safety
// `set` must be a live handle, `alpha` a nul-terminated string, `out`
// writable.
enum DcStatus dc_count_pairs_with_dot(const struct DcPointSet *set,
                                      const char *alpha,
                                      bool allow_zero,
                                      uint64_t *out);

// Most points on one affine flat of dimension `flat_dim`.
//
// # Safety
// `set` must be a live handle; `out` must be writable.
enum DcStatus dc_max_flat_richness(const struct DcPointSet *set, size_t flat_dim, size_t *out);

// Evaluates bound `id` (e.g. `"thm-main"`) with parameters given as a JSON
// object with keys among `n, k, t, r, d, s, eps, u2_exp`.
//
// # Safety
// `id` and `params_json` must be nul-terminated strings; `out` writable.
enum DcStatus dc_evaluate_bound(const char *id, const char *params_json, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOTCHAIN_H */
