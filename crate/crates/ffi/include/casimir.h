#ifndef CASIMIR_H
#define CASIMIR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum CasimirModel {
  CASIMIR_MODEL_EXACT = 0,
  CASIMIR_MODEL_LOW_T = 1,
  CASIMIR_MODEL_HIGH_T = 2,
  CASIMIR_MODEL_CASIMIR_ZERO_T = 3,
  CASIMIR_MODEL_GOLD_CORRECTED = 4,
} CasimirModel;

typedef enum CasimirRegimeLabel {
  CASIMIR_REGIME_LABEL_LOW_T_VALID = 0,
  CASIMIR_REGIME_LABEL_CROSSOVER = 1,
  CASIMIR_REGIME_LABEL_HIGH_T_VALID = 2,
} CasimirRegimeLabel;

typedef enum CasimirStatus {
  CASIMIR_STATUS_OK = 0,
  // Malformed input, unknown unit, or a point outside a model's domain.
  CASIMIR_STATUS_INVALID_INPUT = 2,
  // Gold correction requested outside the tabulated range.
  CASIMIR_STATUS_OUT_OF_TABLE_RANGE = 3,
  // Matsubara sum did not converge, or a non-finite intermediate.
  CASIMIR_STATUS_NUMERICAL_FAILURE = 4,
  CASIMIR_STATUS_NULL_POINTER = 5,
  CASIMIR_STATUS_PANIC = 6,
} CasimirStatus;

typedef enum CasimirSweepScale {
  CASIMIR_SWEEP_SCALE_LINEAR = 0,
  CASIMIR_SWEEP_SCALE_LOG = 1,
} CasimirSweepScale;

// Summation settings. Create with `casimir_policy_new` or
// `casimir_policy_default`, release with `casimir_policy_free`.
typedef struct CasimirPolicy CasimirPolicy;

// Evaluated sweep. Release with `casimir_sweep_free`.
typedef struct CasimirSweep CasimirSweep;

// A model value with its error bound. Energies in J/m², pressures in Pa.
typedef struct CasimirValue {
  double value;
  double truncation_error;
  enum CasimirModel model;
} CasimirValue;

typedef struct CasimirTerms {
  double casimir_term;
  double pair_term;
  double blackbody_term;
  double exponential_term;
  double ratio_2_to_1;
  double ratio_3_to_1;
  double ratio_4_to_1;
} CasimirTerms;

typedef struct CasimirRegime {
  double tau;
  enum CasimirRegimeLabel label;
} CasimirRegime;

typedef struct CasimirComparison {
  double tau;
  double exact;
  double low_t;
  double high_t;
  double casimir;
  double rel_dev_low_t;
  double rel_dev_high_t;
  double rel_dev_casimir;
} CasimirComparison;

// One (separation, model) record of a sweep. When `status` is not `Ok` the
// numeric fields are NaN. `correction_factor` is NaN when absent.
typedef struct CasimirSweepRow {
  double separation;
  double temperature;
  double tau;
  enum CasimirModel model;
  double energy;
  double pressure;
  double correction_factor;
  double truncation_error;
  enum CasimirStatus status;
} CasimirSweepRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL after a success.
// The pointer stays valid until the next call into this library on the same
// thread.
const char *casimir_last_error_message(void);

// # Safety
// `out` must be NULL or valid for writes.
enum CasimirStatus casimir_policy_new(double relative_tolerance,
                                      size_t max_matsubara_terms,
                                      double tau_floor,
                                      struct CasimirPolicy **out);

// Default policy: tolerance 1e-12, 10⁶ terms, tau floor 1e-3.
struct CasimirPolicy *casimir_policy_default(void);

// # Safety
// `policy` must be NULL or a pointer from `casimir_policy_new`/`_default`
// not yet freed.
void casimir_policy_free(struct CasimirPolicy *policy);

// τ = 2kTl/ħc. Separation in meters, temperature in kelvin.
//
// # Safety
// `out` must be valid for writes.
enum CasimirStatus casimir_tau(double separation, double temperature, double *out);

// Parses a length such as "300nm" or "0.8um" into meters. Bare numbers are meters.
//
// # Safety
// `text` must be NULL or a NUL-terminated string; `out` valid for writes.
enum CasimirStatus casimir_parse_length(const char *text, double *out);

// Parses a temperature such as "300K" into kelvin. Bare numbers are kelvin.
//
// # Safety
// `text` must be NULL or a NUL-terminated string; `out` valid for writes.
enum CasimirStatus casimir_parse_temperature(const char *text, double *out);

// Free energy per unit area of `model`. A NULL `policy` uses the default.
//
// # Safety
// `policy` must be NULL or a live policy handle; `out` valid for writes.
enum CasimirStatus casimir_energy(enum CasimirModel model,
                                  double separation,
                                  double temperature,
                                  const struct CasimirPolicy *policy,
                                  struct CasimirValue *out);

// Pressure of `model`; negative is attractive.
//
// # Safety
// `policy` must be NULL or a live policy handle; `out` valid for writes.
enum CasimirStatus casimir_pressure(enum CasimirModel model,
                                    double separation,
                                    double temperature,
                                    const struct CasimirPolicy *policy,
                                    struct CasimirValue *out);

// # Safety
// `out` must be valid for writes.
enum CasimirStatus casimir_terms(double separation, double temperature, struct CasimirTerms *out);

// Gold correction factor, interpolated from the 300–800 nm, 0–300 K table.
//
// # Safety
// `out` must be valid for writes.
enum CasimirStatus casimir_correction_factor(double separation, double temperature, double *out);

// # Safety
// `out` must be valid for writes.
enum CasimirStatus casimir_classify_regime(double separation,
                                           double temperature,
                                           struct CasimirRegime *out);

// # Safety
// `policy` must be NULL or a live policy handle; `out` valid for writes.
enum CasimirStatus casimir_compare_models(double separation,
                                          double temperature,
                                          const struct CasimirPolicy *policy,
                                          struct CasimirComparison *out);

// Separation (m) at which both expansions deviate equally from the exact sum.
//
// # Safety
// `policy` must be NULL or a live policy handle; `out` valid for writes.
enum CasimirStatus casimir_crossover_separation(double temperature,
                                                const struct CasimirPolicy *policy,
                                                double *out);

// Li_order(z) for order 1..=3 and 0 ≤ z < 1.
//
// # Safety
// `out` must be valid for writes.
enum CasimirStatus casimir_polylog(uint32_t order, double z, double *out);

// Evaluates `n_models` models at `steps` separations from `l_start` to
// `l_stop` (m) at fixed temperature. Failures at individual points are
// recorded in the row's `status` rather than failing the sweep.
//
// # Safety
// `models` must point to `n_models` values; `policy` NULL or live; `out`
// valid for writes.
enum CasimirStatus casimir_sweep_run(double l_start,
                                     double l_stop,
                                     size_t steps,
                                     enum CasimirSweepScale scale,
                                     double temperature,
                                     const enum CasimirModel *models,
                                     size_t n_models,
                                     bool include_correction,
                                     const struct CasimirPolicy *policy,
                                     struct CasimirSweep **out);

// Number of rows in `sweep`; 0 for NULL.
//
// # Safety
// `sweep` must be NULL or a live sweep handle.
size_t casimir_sweep_len(const struct CasimirSweep *sweep);

// # Safety
// `sweep` must be a live sweep handle; `out` valid for writes.
enum CasimirStatus casimir_sweep_row(const struct CasimirSweep *sweep,
                                     size_t index,
                                     struct CasimirSweepRow *out);

// # Safety
// `sweep` must be NULL or a pointer from `casimir_sweep_run` not yet freed.
void casimir_sweep_free(struct CasimirSweep *sweep);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CASIMIR_H */
