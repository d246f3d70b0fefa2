#ifndef RESOLVENT_H
#define RESOLVENT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RsvAction {
  RSV_ACTION_GEOMETRIC = 0,
  RSV_ACTION_STANDARD = 1,
} RsvAction;

typedef enum RsvSeriesKind {
  /**
   * `I_d(q, t)`.
   */
  RSV_SERIES_KIND_LOCAL = 0,
  /**
   * `I_d(q⁻¹, qt)`.
   */
  RSV_SERIES_KIND_GLOBAL = 1,
  /**
   * `I_d(q⁻², qt)`.
   */
  RSV_SERIES_KIND_COHOMOLOGY = 2,
} RsvSeriesKind;

typedef enum RsvStatus {
  RSV_STATUS_OK = 0,
  RSV_STATUS_NULL_POINTER = 1,
  RSV_STATUS_INVALID_ARGUMENT = 2,
  RSV_STATUS_UNSUPPORTED_DEGREE = 3,
  RSV_STATUS_BUDGET_EXCEEDED = 4,
  RSV_STATUS_BUFFER_TOO_SMALL = 5,
  RSV_STATUS_OVERFLOW = 6,
  RSV_STATUS_COMPUTATION_FAILED = 7,
  RSV_STATUS_PANIC = 8,
} RsvStatus;

/**
 * A Nichols algebra `B_d` together with its completed rewrite system.
 */
typedef struct RsvNichols RsvNichols;

/**
 * A truncated power series in `t` with Laurent polynomial coefficients in `q`.
 */
typedef struct RsvSeries RsvSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the next failing
 * call on the same thread; do not free.
 */
const char *rsv_last_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *rsv_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library that has not been freed.
 */
void rsv_string_free(char *s);

/**
 * Expands the chosen specialisation of `I_d` to `t`-order `order` (inclusive).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum RsvStatus rsv_series_new(uint32_t d,
                              enum RsvSeriesKind kind,
                              size_t order,
                              struct RsvSeries **out);

/**
 * # Safety
 * `h` must be null or a handle from [`rsv_series_new`] that has not been freed.
 */
void rsv_series_free(struct RsvSeries *h);

/**
 * # Safety
 * `h` must be a live series handle and `out` a valid pointer.
 */
enum RsvStatus rsv_series_order(const struct RsvSeries *h, size_t *out);

/**
 * Writes the `t^b` coefficient as `exp:coeff;exp:coeff` pairs (empty for zero).
 *
 * # Safety
 * `h` must be a live series handle and `out` a valid pointer. Free the result with
 * [`rsv_string_free`].
 */
enum RsvStatus rsv_series_coeff_string(const struct RsvSeries *h, size_t b, char **out);

/**
 * Integer coefficient of `q^exp t^b`.
 *
 * # Safety
 * `h` must be a live series handle and `out` a valid pointer.
 */
enum RsvStatus rsv_series_coeff_int(const struct RsvSeries *h, size_t b, int64_t exp, int64_t *out);

/**
 * Builds `B_d` by rewriting completion with at most `rule_cap` rules.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum RsvStatus rsv_nichols_build(size_t d, size_t rule_cap, struct RsvNichols **out);

/**
 * # Safety
 * `h` must be null or a handle from [`rsv_nichols_build`] that has not been freed.
 */
void rsv_nichols_free(struct RsvNichols *h);

/**
 * Hilbert series coefficients `dim B^0, dim B^1, ...`. `out_len` receives the required
 * length even when the buffer is too small.
 *
 * # Safety
 * `h` must be a live handle, `buf` must have room for `cap` entries, `out_len` valid.
 */
enum RsvStatus rsv_nichols_dims(const struct RsvNichols *h,
                                uint64_t *buf,
                                size_t cap,
                                size_t *out_len);

/**
 * Dimensions of the `S_d`-invariant part of `Ext^{a,b}` for `a = 0..=b` at internal
 * degree `b`.
 *
 * # Safety
 * `h` must be a live handle, `buf` must have room for `cap` entries, `out_len` valid.
 */
enum RsvStatus rsv_invariant_ext_row(const struct RsvNichols *h,
                                     enum RsvAction action,
                                     size_t b,
                                     uint64_t *buf,
                                     size_t cap,
                                     size_t *out_len);

/**
 * Exact count of vectors in `V_d(F_p[t]/t^{b+1})` whose discriminant has valuation `b`,
 * out of `p^{dim(b+1)}`. Fails with `BudgetExceeded` when the enumeration exceeds `budget`.
 *
 * # Safety
 * `out_count` and `out_total` must be valid pointers.
 */
enum RsvStatus rsv_density_exact(uint32_t d,
                                 uint32_t p,
                                 uint32_t b,
                                 uint64_t budget,
                                 uint64_t *out_count,
                                 uint64_t *out_total);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESOLVENT_H */
