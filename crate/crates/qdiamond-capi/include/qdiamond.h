#ifndef QDIAMOND_H
#define QDIAMOND_H

/* Generated by cbindgen from qdiamond-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum QdStatus {
  QD_STATUS_OK = 0,
  QD_STATUS_NULL_ARGUMENT,
  QD_STATUS_INVALID_ARGUMENT,
  QD_STATUS_PARSE_ERROR,
  QD_STATUS_RING_MISMATCH,
  QD_STATUS_NON_UNIT_CONSTANT,
  QD_STATUS_INDEX_OUT_OF_RANGE,
  QD_STATUS_NOT_PRIME,
  QD_STATUS_PANIC,
} QdStatus;

/**
 * Opaque truncated power series handle.
 */
typedef struct QdSeries QdSeries;

/**
 * Outcome of a bounded congruence verification.
 */
typedef struct QdReport {
  /**
   * Indices A*n + B below this bound were checked.
   */
  uint64_t bound;
  /**
   * Progression index of the earliest violation (valid if
   * `has_counterexample` is 1).
   */
  uint64_t counterexample_n;
  /**
   * The argument A*n + B of the earliest violation.
   */
  uint64_t counterexample_index;
  /**
   * d_k(index) mod M at the violation, nonzero.
   */
  uint64_t counterexample_residue;
  /**
   * 1 when the congruence holds everywhere below the bound.
   */
  uint8_t holds;
  uint8_t has_counterexample;
} QdReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *qd_last_error(void);

/**
 * Crate version as a static string.
 */
const char *qd_version(void);

/**
 * Expand the eta quotient given as whitespace-separated `r^e` tokens
 * (e.g. "2^2 1^-7") to `order` coefficients.
 *
 * # Safety
 * `eta` must be NULL or a valid NUL-terminated string; `out` must be
 * NULL or a valid location for one pointer.
 */
enum QdStatus qd_series_eta(const char *eta,
                            uint64_t order,
                            uint64_t modulus,
                            struct QdSeries **out);

/**
 * Expand d_k (the f_2^k / f_1^{3k+1} stream) to `order` coefficients.
 *
 * # Safety
 * `out` must be NULL or a valid location for one pointer.
 */
enum QdStatus qd_series_dk(uint64_t k, uint64_t order, uint64_t modulus, struct QdSeries **out);

/**
 * Expand the partition generating function 1/f_1 to `order` coefficients.
 *
 * # Safety
 * `out` must be NULL or a valid location for one pointer.
 */
enum QdStatus qd_series_partition(uint64_t order, uint64_t modulus, struct QdSeries **out);

/**
 * Number of retained coefficients; 0 for a NULL handle.
 *
 * # Safety
 * `series` must be NULL or a live handle from this library.
 */
uint64_t qd_series_order(const struct QdSeries *series);

/**
 * Coefficient of q^n as a u64 residue. Only valid for modular series.
 *
 * # Safety
 * `series` must be NULL or a live handle; `out` NULL or writable.
 */
enum QdStatus qd_series_coeff_u64(const struct QdSeries *series, uint64_t n, uint64_t *out);

/**
 * Coefficient of q^n as a decimal string (exact or modular). The caller
 * frees the string with [`qd_string_free`].
 *
 * # Safety
 * `series` must be NULL or a live handle; `out` NULL or writable.
 */
enum QdStatus qd_series_coeff_str(const struct QdSeries *series, uint64_t n, char **out);

/**
 * Release a series handle. NULL is a no-op.
 *
 * # Safety
 * `series` must be NULL or a handle from this library, not yet freed.
 */
void qd_series_free(struct QdSeries *series);

/**
 * Release a string returned by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must be NULL or a string from this library, not yet freed.
 */
void qd_string_free(char *s);

/**
 * Verify d_k(A*n + B) ≡ 0 (mod M) for all A*n + B < bound and fill in
 * the report.
 *
 * # Safety
 * `out` must be NULL or a valid location for one [`QdReport`].
 */
enum QdStatus qd_verify(uint64_t k,
                        uint64_t a,
                        uint64_t b,
                        uint64_t m,
                        uint64_t bound,
                        struct QdReport *out);

/**
 * Verify one classical identity by its CLI name (e.g. "triangular",
 * "mod11-a"). Writes 1 to `out_pass` when LHS = RHS up to `order`.
 *
 * # Safety
 * `name` must be NULL or a valid NUL-terminated string; `out_pass`
 * NULL or writable.
 */
enum QdStatus qd_verify_lemma(const char *name, uint64_t order, uint8_t *out_pass);

/**
 * Check the 3-adic d_2 family for alpha = 1..=alpha_max below `bound`.
 * Writes 1 to `out_all_pass` when every alpha holds.
 *
 * # Safety
 * `out_all_pass` must be NULL or writable.
 */
enum QdStatus qd_smoot_check(uint32_t alpha_max, uint64_t bound, uint8_t *out_all_pass);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QDIAMOND_H */
