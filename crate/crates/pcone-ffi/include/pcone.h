/* C interface to the pcone p-cone geometry library. */

#ifndef PCONE_H
#define PCONE_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every fallible call.
 */
typedef enum PconeStatus {
  PCONE_STATUS_OK = 0,
  PCONE_STATUS_INVALID_ARGUMENT = 1,
  PCONE_STATUS_ZERO_VECTOR = 2,
  PCONE_STATUS_UNSUPPORTED_EXPONENT = 3,
  PCONE_STATUS_NOT_TWICE_DIFFERENTIABLE = 4,
  PCONE_STATUS_DIMENSION_MISMATCH = 5,
  PCONE_STATUS_NOT_POLYHEDRAL = 6,
  PCONE_STATUS_SINGULAR = 7,
  PCONE_STATUS_CONVERGENCE_FAILURE = 8,
  PCONE_STATUS_NOT_INTERIOR = 9,
  PCONE_STATUS_NOT_ON_TARGET_GRAPH = 10,
} PconeStatus;

/**
 * Cone membership classification.
 */
typedef enum PconeMembership {
  PCONE_MEMBERSHIP_INTERIOR = 0,
  PCONE_MEMBERSHIP_BOUNDARY = 1,
  PCONE_MEMBERSHIP_OUTSIDE = 2,
} PconeMembership;

/**
 * Opaque handle to a cone `K_p^{n+1}`.
 */
typedef struct PconeCone PconeCone;

/**
 * Opaque handle to an invertible linear map with cached inverse.
 */
typedef struct PconeMap PconeMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; valid until the next
 * failing call. Never null.
 */
const char *pcone_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *pcone_version(void);

/**
 * Create a cone handle. `is_inf != 0` selects `p = inf` (then `p` is
 * ignored); otherwise `p` must be a finite real `>= 1`. `ambient_dim` is
 * `n + 1 >= 2`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PconeStatus pcone_cone_new(double p,
                                int32_t is_inf,
                                size_t ambient_dim,
                                struct PconeCone **out);

/**
 * Free a cone handle (null is a no-op).
 *
 * # Safety
 * `cone` must have come from this library and not be freed twice.
 */
void pcone_cone_free(struct PconeCone *cone);

/**
 * The dual cone: same dimension, conjugate exponent.
 *
 * # Safety
 * `cone` and `out` must be valid pointers.
 */
enum PconeStatus pcone_cone_dual(const struct PconeCone *cone, struct PconeCone **out);

/**
 * Ambient dimension `n + 1` of the cone.
 *
 * # Safety
 * `cone` must be a valid handle.
 */
size_t pcone_cone_ambient_dim(const struct PconeCone *cone);

/**
 * p-norm of an `n`-vector under the cone's exponent.
 *
 * # Safety
 * `x` must point to `len` doubles; `out` must be valid.
 */
enum PconeStatus pcone_norm(const struct PconeCone *cone, const double *x, size_t len, double *out);

/**
 * Gradient of the p-norm at a nonzero `n`-vector, written into `out`
 * (length `len`). Requires finite `p > 1`.
 *
 * # Safety
 * `x` and `out` must point to `len` doubles.
 */
enum PconeStatus pcone_gradient(const struct PconeCone *cone,
                                const double *x,
                                size_t len,
                                double *out);

/**
 * Membership of the ambient point `z = (t, x_1, ..., x_n)` with a symmetric
 * boundary band of width `tol`.
 *
 * # Safety
 * `z` must point to `dim` doubles; `out` must be valid.
 */
enum PconeStatus pcone_contains(const struct PconeCone *cone,
                                const double *z,
                                size_t dim,
                                double tol,
                                enum PconeMembership *out);

/**
 * Euclidean projection onto the cone. Writes the projection into `pk_out`
 * and the Moreau complement `z - pk` (the projection onto `-K_q`) into
 * `pkstar_neg_out`, both of length `dim`.
 *
 * # Safety
 * `z`, `pk_out`, `pkstar_neg_out` must point to `dim` doubles each.
 */
enum PconeStatus pcone_project(const struct PconeCone *cone,
                               const double *z,
                               size_t dim,
                               double tol,
                               double *pk_out,
                               double *pkstar_neg_out);

/**
 * Number of extreme rays of a polyhedral cone (`p` in `{1, inf}`).
 *
 * # Safety
 * `out` must be valid.
 */
enum PconeStatus pcone_extreme_ray_count(const struct PconeCone *cone, size_t *out);

/**
 * Build an invertible-map handle from a row-major `dim x dim` matrix.
 *
 * # Safety
 * `row_major` must point to `dim * dim` doubles; `out` must be valid.
 */
enum PconeStatus pcone_map_new(const double *row_major, size_t dim, struct PconeMap **out);

/**
 * Free a map handle (null is a no-op).
 *
 * # Safety
 * `map` must have come from this library and not be freed twice.
 */
void pcone_map_free(struct PconeMap *map);

/**
 * Apply the map to an ambient point.
 *
 * # Safety
 * `z` and `out` must point to `dim` doubles matching the map.
 */
enum PconeStatus pcone_map_apply(const struct PconeMap *map,
                                 const double *z,
                                 size_t dim,
                                 double *out);

/**
 * Structural automorphism decision for `p != 2`: sets `*is_member` to 1 or
 * 0; when 1, `*alpha_out` receives the scale factor.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PconeStatus pcone_is_structural_automorphism(const struct PconeMap *map,
                                                  const struct PconeCone *cone,
                                                  double tol,
                                                  int32_t *is_member,
                                                  double *alpha_out);

/**
 * One-sided sampling oracle: sets `*refuted` to 1 when a boundary sample
 * maps outside the cone (under image or preimage), 0 otherwise.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PconeStatus pcone_sampling_oracle(const struct PconeMap *map,
                                       const struct PconeCone *cone,
                                       size_t samples,
                                       uint64_t seed,
                                       double tol,
                                       int32_t *refuted);

/**
 * Multi-start search for a positive definite self-duality witness.
 * `*json_out` receives the full search report as a JSON string; free it
 * with [`pcone_string_free`].
 *
 * # Safety
 * `cone` and `json_out` must be valid pointers.
 */
enum PconeStatus pcone_selfdual_search_json(const struct PconeCone *cone,
                                            size_t restarts,
                                            size_t samples,
                                            uint64_t seed,
                                            size_t budget,
                                            char **json_out);

/**
 * Multi-start search for a linear isomorphism between two cones of the
 * same dimension, reported as JSON.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PconeStatus pcone_iso_search_json(const struct PconeCone *from,
                                       const struct PconeCone *to,
                                       size_t restarts,
                                       size_t samples,
                                       uint64_t seed,
                                       size_t budget,
                                       char **json_out);

/**
 * Free a string returned by a `_json` call (null is a no-op).
 *
 * # Safety
 * `s` must have come from this library and not be freed twice.
 */
void pcone_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PCONE_H */
