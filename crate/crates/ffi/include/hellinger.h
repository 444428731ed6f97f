#ifndef HELLINGER_H
#define HELLINGER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Zero is success.
 */
typedef enum HlStatus {
  HL_STATUS_OK = 0,
  HL_STATUS_INVALID_ARGUMENT = 1,
  HL_STATUS_DOMAIN = 2,
  HL_STATUS_POLE = 3,
  HL_STATUS_NO_CONVERGENCE = 4,
  HL_STATUS_NOT_PSD = 5,
  HL_STATUS_UNSUPPORTED = 6,
  HL_STATUS_CONSISTENCY = 7,
  HL_STATUS_IO = 8,
  HL_STATUS_NULL_POINTER = 9,
  HL_STATUS_PANIC = 10,
} HlStatus;

typedef enum HlEnsemble {
  HL_ENSEMBLE_HILBERT_SCHMIDT = 0,
  HL_ENSEMBLE_BURES_HALL = 1,
} HlEnsemble;

typedef enum HlFormat {
  HL_FORMAT_JSON = 0,
  HL_FORMAT_CSV = 1,
} HlFormat;

/**
 * Opaque experiment report handle.
 */
typedef struct HlReport HlReport;

/**
 * Opaque scenario handle.
 */
typedef struct HlScenario HlScenario;

/**
 * Exact statistics of `D_H`. The gamma fields are NaN when `has_gamma` is false.
 */
typedef struct HlSummary {
  double mean_affinity;
  double mean_sq_affinity;
  double mean_dh;
  double var_dh;
  bool has_gamma;
  double gamma_shape;
  double gamma_rate;
} HlSummary;

/**
 * Monte Carlo estimates from a finished experiment.
 */
typedef struct HlMonteCarlo {
  size_t trials;
  double mean_dh;
  double var_dh;
  double stderr_mean;
  double stderr_var;
  /**
   * NaN when the exact variance is zero.
   */
  double z_mean;
  double z_var;
} HlMonteCarlo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or NULL.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *hl_last_error_message(void);

void hl_clear_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hl_version(void);

/**
 * `<tr sqrt ρ>` and `<(tr sqrt ρ)^2>` for an `n x n` state with environment `m`.
 *
 * # Safety
 * `first` and `second` must be valid for writes.
 */
enum HlStatus hl_sqrt_trace_moments(enum HlEnsemble ensemble,
                                    size_t n,
                                    size_t m,
                                    double *first,
                                    double *second);

/**
 * Large-dimension approximation of `<A^2>` for two independent
 * Hilbert-Schmidt states.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HlStatus hl_asymptotic_mean_sq_affinity_hs(size_t n, size_t m, double *out);

/**
 * Affinity `tr(sqrt ρ1 sqrt ρ2)` of two `n x n` density matrices given as
 * row-major real and imaginary parts. An imaginary pointer may be NULL for
 * a real matrix.
 *
 * # Safety
 * `re1` and `re2` (and `im1`, `im2` when non-null) must point to `n * n`
 * readable doubles. `out` must be valid for writes.
 */
enum HlStatus hl_affinity(size_t n,
                          const double *re1,
                          const double *im1,
                          const double *re2,
                          const double *im2,
                          double *out);

/**
 * Random state of the given ensemble against the fixed state with
 * eigenvalues `spectrum[0..n]`.
 *
 * # Safety
 * `spectrum` must point to `n` readable doubles and `out` must be valid
 * for writes. The handle written to `out` is released with
 * [`hl_scenario_free`].
 */
enum HlStatus hl_scenario_fixed_new(const double *spectrum,
                                    size_t n,
                                    enum HlEnsemble ensemble,
                                    size_t m,
                                    struct HlScenario **out);

/**
 * Two independent random `n x n` states.
 *
 * # Safety
 * `out` must be valid for writes. The handle written to `out` is released
 * with [`hl_scenario_free`].
 */
enum HlStatus hl_scenario_random_new(size_t n,
                                     enum HlEnsemble ensemble_1,
                                     size_t m_1,
                                     enum HlEnsemble ensemble_2,
                                     size_t m_2,
                                     struct HlScenario **out);

/**
 * # Safety
 * `scenario` must be NULL or a handle from this library not yet freed.
 */
void hl_scenario_free(struct HlScenario *scenario);

/**
 * # Safety
 * `scenario` must be a live handle and `out` valid for writes.
 */
enum HlStatus hl_scenario_summary(const struct HlScenario *scenario, struct HlSummary *out);

/**
 * Runs a Monte Carlo experiment. Bures-Hall chains use the default burn-in
 * and thinning. Results depend only on `seed` and `workers`.
 *
 * # Safety
 * `scenario` must be a live handle and `out` valid for writes. The handle
 * written to `out` is released with [`hl_report_free`].
 */
enum HlStatus hl_experiment_run(const struct HlScenario *scenario,
                                size_t trials,
                                uint64_t seed,
                                size_t workers,
                                size_t histogram_bins,
                                struct HlReport **out);

/**
 * # Safety
 * `report` must be NULL or a handle from this library not yet freed.
 */
void hl_report_free(struct HlReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` valid for writes.
 */
enum HlStatus hl_report_exact(const struct HlReport *report, struct HlSummary *out);

/**
 * # Safety
 * `report` must be a live handle and `out` valid for writes.
 */
enum HlStatus hl_report_monte_carlo(const struct HlReport *report, struct HlMonteCarlo *out);

/**
 * Renders the report as JSON or as the histogram CSV table.
 *
 * # Safety
 * `report` must be a live handle and `out` valid for writes. The string
 * written to `out` is released with [`hl_string_free`].
 */
enum HlStatus hl_report_render(const struct HlReport *report, enum HlFormat format, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void hl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HELLINGER_H */
