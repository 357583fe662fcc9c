/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef YOUNG_BOUNDS_H
#define YOUNG_BOUNDS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which matrix sits below the other in the spectral sandwich.
 */
typedef enum YbSandwichCase {
  /**
   * `m <= A <= m' < M' <= B <= M`
   */
  YB_SANDWICH_CASE_I = 0,
  /**
   * `m <= B <= m' < M' <= A <= M`
   */
  YB_SANDWICH_CASE_II = 1,
} YbSandwichCase;

/**
 * Result code of every fallible call.
 */
typedef enum YbStatus {
  YB_STATUS_OK = 0,
  /**
   * A required pointer was null or a string was not valid UTF-8.
   */
  YB_STATUS_NULL_OR_INVALID_ARGUMENT = 1,
  YB_STATUS_INVALID_POINT = 2,
  YB_STATUS_INVALID_DEFORM = 3,
  YB_STATUS_DOMAIN = 4,
  YB_STATUS_UNKNOWN_BOUND = 5,
  YB_STATUS_UNKNOWN_DIFF = 6,
  YB_STATUS_REGION = 7,
  YB_STATUS_INVALID_REGION = 8,
  YB_STATUS_NOT_FOUND = 9,
  YB_STATUS_NOT_POSITIVE_DEFINITE = 10,
  YB_STATUS_EIGEN = 11,
  YB_STATUS_DIMENSION_MISMATCH = 12,
  YB_STATUS_INVALID_SANDWICH = 13,
  YB_STATUS_SANDWICH_VIOLATION = 14,
  YB_STATUS_PARSE = 15,
  YB_STATUS_IO = 16,
  YB_STATUS_PANIC = 99,
} YbStatus;

/**
 * Constants used by the two-sided operator bound.
 */
typedef enum YbVariant {
  YB_VARIANT_AS_STATED = 0,
  YB_VARIANT_INTERVAL_EXTREMAL = 1,
} YbVariant;

/**
 * Opaque Hermitian matrix handle.
 */
typedef struct YbMatrix YbMatrix;

/**
 * Pointwise check of a scalar bound against the ratio.
 */
typedef struct YbCertificate {
  double ratio_value;
  double bound_value;
  double margin;
  bool holds;
  double tol;
} YbCertificate;

typedef struct YbSandwich {
  double m;
  double m_prime;
  double big_m_prime;
  double big_m;
  enum YbSandwichCase case_;
} YbSandwich;

/**
 * Loewner-order check of an operator bound.
 */
typedef struct YbOperatorCertificate {
  double scalar_factor;
  double min_eigen_margin;
  bool holds;
  double tol;
} YbOperatorCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *yb_version(void);

/**
 * Message of the last failure on this thread, or null if none occurred.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *yb_last_error_message(void);

/**
 * `((1 - v) + v t) / t^v`.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum YbStatus yb_young_ratio(double t, double v, double *out);

/**
 * Kantorovich constant `(t + 1)^2 / (4 t)`.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum YbStatus yb_kantorovich(double t, double *out);

/**
 * Deformed exponential `(1 + r x)^(1/r)`.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
enum YbStatus yb_exp_r(double r, double x, double *out);

/**
 * Number of entries in the bound catalog.
 */
size_t yb_bound_count(void);

/**
 * Id of catalog entry `index` as a static string, or null when out of range.
 */
const char *yb_bound_id(size_t index);

/**
 * Number of difference functions.
 */
size_t yb_diff_count(void);

/**
 * Id of difference function `index`, or null when out of range.
 */
const char *yb_diff_id(size_t index);

/**
 * Value of bound `id` at `(t, v)`. `r` is null for the bound's default
 * deformation.
 *
 * # Safety
 * `id` must be a nul-terminated string; `r` null or readable; `out` null or
 * writable.
 */
enum YbStatus yb_evaluate(const char *id, double t, double v, const double *r, double *out);

/**
 * Certify bound `id` against the ratio at `(t, v)` with absolute tolerance
 * `tol`.
 *
 * # Safety
 * As for [`yb_evaluate`].
 */
enum YbStatus yb_certify_point(const char *id,
                               double t,
                               double v,
                               const double *r,
                               double tol,
                               struct YbCertificate *out);

/**
 * Value of difference function `id` at `(t, v)`; `r` is required only by
 * the deformed difference and must be null otherwise.
 *
 * # Safety
 * As for [`yb_evaluate`].
 */
enum YbStatus yb_eval_diff(const char *id, double t, double v, const double *r, double *out);

/**
 * New real symmetric matrix from `dim * dim` row-major entries.
 *
 * # Safety
 * `entries` must be readable for `dim * dim` doubles; `out` writable.
 */
enum YbStatus yb_matrix_new_real(size_t dim, const double *entries, struct YbMatrix **out);

/**
 * New Hermitian matrix from row-major real and imaginary parts.
 *
 * # Safety
 * `re` and `im` must each be readable for `dim * dim` doubles; `out`
 * writable.
 */
enum YbStatus yb_matrix_new_complex(size_t dim,
                                    const double *re,
                                    const double *im,
                                    struct YbMatrix **out);

/**
 * Read a matrix from a text file (`dim n` then `n` rows of `re+imj`).
 *
 * # Safety
 * `path` must be a nul-terminated string; `out` writable.
 */
enum YbStatus yb_matrix_from_file(const char *path, struct YbMatrix **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle from this library not already freed.
 */
void yb_matrix_free(struct YbMatrix *m);

/**
 * Dimension of `m`, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t yb_matrix_dim(const struct YbMatrix *m);

/**
 * Entry `(row, col)` of `m`.
 *
 * # Safety
 * `m` must be a live handle; `re` and `im` writable.
 */
enum YbStatus yb_matrix_get(const struct YbMatrix *m,
                            size_t row,
                            size_t col,
                            double *re,
                            double *im);

/**
 * `(1 - v) A + v B`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` writable.
 */
enum YbStatus yb_weighted_arithmetic(const struct YbMatrix *a,
                                     const struct YbMatrix *b,
                                     double v,
                                     struct YbMatrix **out);

/**
 * `A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}`.
 *
 * # Safety
 * As for [`yb_weighted_arithmetic`].
 */
enum YbStatus yb_weighted_geometric(const struct YbMatrix *a,
                                    const struct YbMatrix *b,
                                    double v,
                                    struct YbMatrix **out);

/**
 * `A^p` for positive-definite `A`.
 *
 * # Safety
 * `a` must be a live handle; `out` writable.
 */
enum YbStatus yb_hermitian_power(const struct YbMatrix *a, double p, struct YbMatrix **out);

/**
 * Whether `A <= B` in Loewner order, with the normalized eigenvalue margin.
 *
 * # Safety
 * `a` and `b` must be live handles; `holds` and `margin` writable.
 */
enum YbStatus yb_loewner_leq(const struct YbMatrix *a,
                             const struct YbMatrix *b,
                             double tol,
                             bool *holds,
                             double *margin);

/**
 * One-sided bound `A nabla_v B <= exp_r(4 v (1 - v) (K(h) - 1)) A #_v B`.
 *
 * # Safety
 * `a` and `b` must be live handles; `s` readable; `out` writable.
 */
enum YbStatus yb_certify_corollary_one(const struct YbMatrix *a,
                                       const struct YbMatrix *b,
                                       double v,
                                       double r,
                                       const struct YbSandwich *s,
                                       double tol,
                                       struct YbOperatorCertificate *out);

/**
 * Two-sided bound; writes the lower and upper certificates.
 *
 * # Safety
 * `a` and `b` must be live handles; `s` readable; `lower` and `upper`
 * writable.
 */
enum YbStatus yb_certify_corollary_two(const struct YbMatrix *a,
                                       const struct YbMatrix *b,
                                       double v,
                                       double r1,
                                       double r2,
                                       const struct YbSandwich *s,
                                       enum YbVariant variant,
                                       double tol,
                                       struct YbOperatorCertificate *lower,
                                       struct YbOperatorCertificate *upper);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* YOUNG_BOUNDS_H */
