#ifndef STATIONARY_KDV_H
#define STATIONARY_KDV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define SKDV_KIND_KDV 0

#define SKDV_KIND_MKDV_FOCUSING 1

#define SKDV_KIND_MKDV_DEFOCUSING 2

/**
 * Result code of every call.
 */
typedef enum SkdvStatus {
  SKDV_STATUS_OK = 0,
  /**
   * No nontrivial solution exists for the given parameters.
   */
  SKDV_STATUS_NO_SOLUTION = 1,
  SKDV_STATUS_INVALID_ARGUMENT = 2,
  SKDV_STATUS_NUMERICAL_FAILURE = 3,
  SKDV_STATUS_NULL_POINTER = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  SKDV_STATUS_INTERNAL = 5,
} SkdvStatus;

/**
 * Opaque solved profile.
 */
typedef struct SkdvProfile SkdvProfile;

/**
 * Converged root of `I(b, c) = 1`.
 */
typedef struct SkdvSolution {
  double b;
  double c;
  double y0;
  double residual;
  uint32_t iterations;
  uint32_t evaluations;
} SkdvSolution;

/**
 * Scalar summary of a profile. `classification` is 1 for a hill and -1 for
 * a hole.
 */
typedef struct SkdvSummary {
  double b;
  double c;
  double amplitude;
  double fundamental_period;
  uint32_t harmonic;
  int32_t classification;
  size_t samples;
  double energy_residual;
  double ode3_residual;
  double slope_residual;
  double boundary_residual;
  double symmetry_residual;
  bool passed;
} SkdvSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *skdv_version(void);

/**
 * Message of the last failed call on this thread, empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *skdv_last_error(void);

/**
 * Whether a nontrivial solution exists for `(kind, b)`.
 *
 * # Safety
 * `out` must be null or valid for a write.
 */
enum SkdvStatus skdv_existence(uint32_t kind, double b, bool *out);

/**
 * `I(b, c)` at relative tolerance `tol`.
 *
 * # Safety
 * `out` must be null or valid for a write.
 */
enum SkdvStatus skdv_period_integral(uint32_t kind, double b, double c, double tol, double *out);

/**
 * Turning point `y0` for `(kind, b, c)`.
 *
 * # Safety
 * `out` must be null or valid for a write.
 */
enum SkdvStatus skdv_turning_point(uint32_t kind, double b, double c, double *out);

/**
 * Solve `I(b, c) = 1` for `c`.
 *
 * # Safety
 * `out` must be null or valid for a write.
 */
enum SkdvStatus skdv_solve_c(uint32_t kind, double b, double tol, struct SkdvSolution *out);

/**
 * Solve on `[-1, 1]` for the normalized parameter `b`. `n_samples = 0`
 * selects the default grid.
 *
 * # Safety
 * `out` must be null or valid for a write. On success `*out` holds a handle
 * to release with [`skdv_profile_free`]; on failure it is set to null.
 */
enum SkdvStatus skdv_solve_normalized(uint32_t kind,
                                      double b,
                                      size_t n_samples,
                                      struct SkdvProfile **out);

/**
 * Solve on `[0, length]` for the coefficient `a`.
 *
 * # Safety
 * Same contract as [`skdv_solve_normalized`].
 */
enum SkdvStatus skdv_solve_physical(uint32_t kind,
                                    double a,
                                    double length,
                                    size_t n_samples,
                                    struct SkdvProfile **out);

/**
 * The `n`-th harmonic on `[0, length]`: `n` copies of the base solution.
 *
 * # Safety
 * Same contract as [`skdv_solve_normalized`].
 */
enum SkdvStatus skdv_solve_harmonic(uint32_t kind,
                                    double a,
                                    double length,
                                    uint32_t n,
                                    size_t n_samples,
                                    struct SkdvProfile **out);

/**
 * Number of samples in `profile`, 0 for a null handle.
 *
 * # Safety
 * `profile` must be null or a live handle.
 */
size_t skdv_profile_len(const struct SkdvProfile *profile);

/**
 * # Safety
 * `profile` must be null or a live handle; `out` null or valid for a write.
 */
enum SkdvStatus skdv_profile_summary(const struct SkdvProfile *profile, struct SkdvSummary *out);

/**
 * Copy positions, values and slopes into caller buffers of length `len`,
 * which must equal [`skdv_profile_len`]. Any buffer may be null to skip it.
 *
 * # Safety
 * `profile` must be null or a live handle; each non-null buffer must be
 * valid for `len` writes of `double`.
 */
enum SkdvStatus skdv_profile_samples(const struct SkdvProfile *profile,
                                     double *x,
                                     double *u,
                                     double *du,
                                     size_t len);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `profile` must be null or a handle not yet freed.
 */
void skdv_profile_free(struct SkdvProfile *profile);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STATIONARY_KDV_H */
