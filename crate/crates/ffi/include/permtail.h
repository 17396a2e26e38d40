#ifndef PERMTAIL_H
#define PERMTAIL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PtStatus {
  PT_STATUS_OK = 0,
  /**
   * `x` outside the admissible interval.
   */
  PT_STATUS_DOMAIN = 1,
  /**
   * `n` above a size cap.
   */
  PT_STATUS_SIZE = 2,
  PT_STATUS_CONVERGENCE = 3,
  /**
   * Expansion order not available.
   */
  PT_STATUS_ORDER = 4,
  /**
   * Tail threshold beyond the support.
   */
  PT_STATUS_EMPTY_TAIL = 5,
  /**
   * Saddle point built for the other statistic.
   */
  PT_STATUS_STATISTIC_MISMATCH = 6,
  /**
   * Expansion bracket not positive.
   */
  PT_STATUS_NON_POSITIVE_BRACKET = 7,
  PT_STATUS_INVALID_ARGUMENT = 8,
  PT_STATUS_CACHE = 9,
  PT_STATUS_NULL_POINTER = 10,
  PT_STATUS_BUFFER_TOO_SMALL = 11,
  PT_STATUS_PANIC = 12,
} PtStatus;

typedef enum PtStatistic {
  PT_STATISTIC_DESCENTS = 0,
  PT_STATISTIC_MAJOR_INDEX = 1,
} PtStatistic;

/**
 * Opaque exact-distribution handle.
 */
typedef struct PtDistribution PtDistribution;

/**
 * Opaque saddle-point handle.
 */
typedef struct PtSaddle PtSaddle;

/**
 * Scalar summary of a solved saddle point.
 */
typedef struct PtSaddleInfo {
  enum PtStatistic statistic;
  double x;
  double t_x;
  double sigma2;
  double rate;
} PtSaddleInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *pt_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pt_version(void);

/**
 * Solves the dual equation at level `x`. On success `*out` owns a new
 * handle.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum PtStatus pt_saddle_solve(enum PtStatistic statistic,
                              double x,
                              size_t max_order,
                              struct PtSaddle **out);

/**
 * # Safety
 * `handle` must come from [`pt_saddle_solve`] or be NULL; `out` must be
 * valid for writing.
 */
enum PtStatus pt_saddle_info(const struct PtSaddle *handle, struct PtSaddleInfo *out);

/**
 * `k`-th derivative of the governing CGF (`L_D` or `L_M`) at `t_x`.
 *
 * # Safety
 * As for [`pt_saddle_info`].
 */
enum PtStatus pt_saddle_ell(const struct PtSaddle *handle, size_t k, double *out);

/**
 * Order-`order` approximation of the log tail probability at size `n`.
 *
 * # Safety
 * As for [`pt_saddle_info`].
 */
enum PtStatus pt_saddle_log_tail(const struct PtSaddle *handle,
                                 size_t n,
                                 size_t order,
                                 double *out);

/**
 * # Safety
 * `handle` must come from [`pt_saddle_solve`] and not be used afterwards.
 * NULL is ignored.
 */
void pt_saddle_free(struct PtSaddle *handle);

/**
 * Builds the exact distribution of `statistic` on `S_n`.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum PtStatus pt_distribution_new(enum PtStatistic statistic,
                                  size_t n,
                                  struct PtDistribution **out);

/**
 * Number of support points, or 0 for NULL.
 *
 * # Safety
 * `handle` must come from [`pt_distribution_new`] or be NULL.
 */
size_t pt_distribution_len(const struct PtDistribution *handle);

/**
 * Copies the probabilities into `buf`, which must hold
 * [`pt_distribution_len`] values.
 *
 * # Safety
 * `buf` must be valid for `len` writes.
 */
enum PtStatus pt_distribution_probabilities(const struct PtDistribution *handle,
                                            double *buf,
                                            size_t len);

/**
 * Exact `log P(X ≥ ⌈n x⌉)` (descents) or `log P(X ≥ ⌈n² x⌉)` (major index).
 * `threshold` may be NULL.
 *
 * # Safety
 * `handle` from [`pt_distribution_new`]; `log_value` valid for writing;
 * `threshold` NULL or valid for writing.
 */
enum PtStatus pt_distribution_log_tail(const struct PtDistribution *handle,
                                       double x,
                                       double *log_value,
                                       int64_t *threshold);

/**
 * # Safety
 * `handle` must come from [`pt_distribution_new`] and not be used
 * afterwards. NULL is ignored.
 */
void pt_distribution_free(struct PtDistribution *handle);

/**
 * Major-index PMF by tilted Fourier inversion. Writes `n(n-1)/2 + 1`
 * values to `buf` and that count to `written`.
 *
 * # Safety
 * `buf` valid for `len` writes, `written` valid for writing.
 */
enum PtStatus pt_major_pmf_fourier(size_t n, double tilt, double *buf, size_t len, size_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERMTAIL_H */
