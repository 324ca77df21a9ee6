#ifndef ORRW_H
#define ORRW_H

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OrrwStatus {
  ORRW_STATUS_OK = 0,
  ORRW_STATUS_NULL_POINTER = 1,
  ORRW_STATUS_DOMAIN = 2,
  ORRW_STATUS_RESOURCE = 3,
  ORRW_STATUS_CONVERGENCE = 4,
  ORRW_STATUS_INTERNAL = 5,
} OrrwStatus;

/**
 * Opaque truncated law on the integers.
 */
typedef struct OrrwDistribution OrrwDistribution;

/**
 * Opaque simulated path.
 */
typedef struct OrrwPath OrrwPath;

/**
 * Opaque exact law of `R_n`.
 */
typedef struct OrrwRangeTable OrrwRangeTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *orrw_last_error(void);

/**
 * Library version, a static NUL-terminated string.
 */
const char *orrw_version(void);

/**
 * Identifier of the random stream construction used by simulations.
 */
const char *orrw_rng_algorithm(void);

/**
 * Next-step probabilities from the given state.
 *
 * # Safety
 * `p_up` and `p_down` must be valid for writes.
 */
enum OrrwStatus orrw_step_weights(int64_t position,
                                  int64_t min,
                                  int64_t max,
                                  uint64_t steps,
                                  double c,
                                  double *p_up,
                                  double *p_down);

/**
 * Compensated one-step drifts of the two position martingales.
 *
 * # Safety
 * `drift_first` and `drift_second` must be valid for writes.
 */
enum OrrwStatus orrw_martingale_drift(int64_t position,
                                      int64_t min,
                                      int64_t max,
                                      uint64_t steps,
                                      double c,
                                      double *drift_first,
                                      double *drift_second);

/**
 * Samples an `n`-step path; release with [`orrw_path_free`].
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum OrrwStatus orrw_path_simulate(double c, uint64_t n, uint64_t seed, struct OrrwPath **out);

/**
 * Number of stored positions (`n + 1`); 0 for `NULL`.
 *
 * # Safety
 * `path` must be null or a live handle from [`orrw_path_simulate`].
 */
size_t orrw_path_len(const struct OrrwPath *path);

/**
 * Copies `min(len, path length)` positions into `buf` and reports how many
 * were written.
 *
 * # Safety
 * `path` must be a live handle, `buf` valid for `len` writes and `written`
 * valid for a write.
 */
enum OrrwStatus orrw_path_positions(const struct OrrwPath *path,
                                    int64_t *buf,
                                    size_t len,
                                    size_t *written);

/**
 * # Safety
 * `path` must be null or a handle not yet freed.
 */
void orrw_path_free(struct OrrwPath *path);

/**
 * Exact law of `R_n` with rising factorial moments up to `ell_max`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum OrrwStatus orrw_range_table_new(double c,
                                     size_t n,
                                     size_t ell_max,
                                     struct OrrwRangeTable **out);

/**
 * Largest range value stored; `P(R_n = r)` is 0 beyond it.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
int64_t orrw_range_table_max_range(const struct OrrwRangeTable *table);

/**
 * `P(R_n = r)`; 0 for `NULL` or out-of-support `r`.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
double orrw_range_table_prob(const struct OrrwRangeTable *table, int64_t r);

/**
 * Mass dropped by pruning.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
double orrw_range_table_deficit(const struct OrrwRangeTable *table);

/**
 * `E[R_n (R_n + 1) ... (R_n + ell)]`.
 *
 * # Safety
 * `table` must be a live handle and `out` valid for a write.
 */
enum OrrwStatus orrw_range_table_factorial_moment(const struct OrrwRangeTable *table,
                                                  size_t ell,
                                                  double *out);

/**
 * # Safety
 * `table` must be null or a handle not yet freed.
 */
void orrw_range_table_free(struct OrrwRangeTable *table);

/**
 * Law of `τ_i`. `n_max = 0` selects the automatic horizon.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum OrrwStatus orrw_tau_distribution(size_t i, size_t n_max, struct OrrwDistribution **out);

/**
 * Law of `T_i`. `n_max = 0` selects the automatic horizon.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum OrrwStatus orrw_t_distribution(double c,
                                    size_t i,
                                    size_t n_max,
                                    struct OrrwDistribution **out);

/**
 * Law of `S_k`. `n_max = 0` selects the automatic horizon.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum OrrwStatus orrw_s_k_distribution(double c,
                                      size_t k,
                                      size_t n_max,
                                      struct OrrwDistribution **out);

/**
 * Value carried by the first stored probability.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
int64_t orrw_distribution_offset(const struct OrrwDistribution *d);

/**
 * Number of stored probabilities.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t orrw_distribution_len(const struct OrrwDistribution *d);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
double orrw_distribution_deficit(const struct OrrwDistribution *d);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
double orrw_distribution_prob(const struct OrrwDistribution *d, int64_t value);

/**
 * Mean and variance of the stored mass.
 *
 * # Safety
 * `d` must be a live handle; `mean` and `variance` valid for writes.
 */
enum OrrwStatus orrw_distribution_moments(const struct OrrwDistribution *d,
                                          double *mean,
                                          double *variance);

/**
 * # Safety
 * `d` must be null or a handle not yet freed.
 */
void orrw_distribution_free(struct OrrwDistribution *d);

/**
 * `d_s`, the solution of `cosh(d) = 1/s`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum OrrwStatus orrw_d_of_s(double s, double *out);

/**
 * `g_x(s) = E[s^{τ_x}]`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum OrrwStatus orrw_g(double x, double s, double *out);

/**
 * `G_x(s) = E[s^{T_x}]`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum OrrwStatus orrw_big_g(double x, double s, double c, double *out);

/**
 * `E[s^{S_k}]`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum OrrwStatus orrw_gen_s_k(double c, size_t k, double s, double *out);

/**
 * `H_ℓ(s)` with automatic truncation; `k_terms` receives the number of
 * terms summed.
 *
 * # Safety
 * `value` and `k_terms` must be valid for writes.
 */
enum OrrwStatus orrw_h_ell(double c, size_t ell, double s, double *value, size_t *k_terms);

/**
 * `J_ℓ(c)` by quadrature.
 *
 * # Safety
 * `value` and `abs_error_bound` must be valid for writes.
 */
enum OrrwStatus orrw_j_quadrature(double c, uint32_t ell, double *value, double *abs_error_bound);

/**
 * `J_ℓ(c)` for integer `c` and `ℓ ∈ {1, 2}` by its finite sum.
 *
 * # Safety
 * `value` and `abs_error_bound` must be valid for writes.
 */
enum OrrwStatus orrw_j_closed_form(uint32_t c,
                                   uint32_t ell,
                                   double *value,
                                   double *abs_error_bound);

/**
 * Limit of `E[(R_n/√n)^ℓ]`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum OrrwStatus orrw_moment_constant(double c, uint32_t ell, double *out);

/**
 * Limit of `H_ℓ(s)(1 - s)^{(3+ℓ)/2}`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum OrrwStatus orrw_k_constant(double c, size_t ell, double *out);

/**
 * Heuristic bounds on `|V[X_n/√n] - 1|` for large `n`.
 *
 * # Safety
 * `lhs` and `rhs` must be valid for writes.
 */
enum OrrwStatus orrw_variance_bounds(double c, double *lhs, double *rhs);

/**
 * Monte Carlo estimate of `E[X_n^2]/n`. `workers = 0` uses all available
 * cores; the result does not depend on it.
 *
 * # Safety
 * `mean` and `stderr` must be valid for writes.
 */
enum OrrwStatus orrw_estimate_position_variance(double c,
                                                uint64_t n,
                                                uint64_t reps,
                                                uint64_t seed,
                                                size_t workers,
                                                double *mean,
                                                double *stderr);

/**
 * Monte Carlo estimate of `E[(R_n/√n)^ℓ]` for a single `ℓ`.
 *
 * # Safety
 * `mean` and `stderr` must be valid for writes.
 */
enum OrrwStatus orrw_estimate_range_moment(double c,
                                           uint64_t n,
                                           uint64_t reps,
                                           uint32_t ell,
                                           uint64_t seed,
                                           size_t workers,
                                           double *mean,
                                           double *stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORRW_H */
