#ifndef RELSPIN_H
#define RELSPIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RelspinStatus {
  RELSPIN_STATUS_OK = 0,
  RELSPIN_STATUS_NULL_POINTER = 1,
  RELSPIN_STATUS_INVALID_ARGUMENT = 2,
  RELSPIN_STATUS_INVALID_STATE = 3,
  RELSPIN_STATUS_NUMERICAL = 4,
  RELSPIN_STATUS_PANIC = 5,
} RelspinStatus;

// Opaque covariant spin density matrix.
typedef struct RelspinOmega RelspinOmega;

// Opaque BMT trajectory.
typedef struct RelspinTrajectory RelspinTrajectory;

// Clifford-basis coefficients. `u` and `w` are contravariant, `s` holds
// `s_{μν}` row-major.
typedef struct RelspinDecomposition {
  double a;
  double b;
  double u[4];
  double w[4];
  double s[16];
} RelspinDecomposition;

// Uniform `E`, `B` plus the gradient `grad_b[3*i + j] = ∂ᵢB_j`.
typedef struct RelspinField {
  double e[3];
  double b[3];
  double grad_b[9];
} RelspinField;

// Particle constants and initial state (momentum, rest-frame Bloch vector).
typedef struct RelspinParticle {
  double mass;
  double charge;
  double zeta;
  double momentum[3];
  double bloch[3];
} RelspinParticle;

typedef struct RelspinTrajectoryRow {
  double tau;
  double x[4];
  double q[4];
  double w[4];
} RelspinTrajectoryRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread, or NULL. The
// pointer stays valid until the next failing call on the same thread.
const char *relspin_last_error(void);

// Ω of a particle with sharp momentum `momentum[3]` and rest-frame Bloch
// vector `bloch[3]`.
//
// # Safety
// Array arguments must point to readable doubles; `out` must be writable.
enum RelspinStatus relspin_omega_sharp(double mass,
                                       const double *momentum,
                                       const double *bloch,
                                       struct RelspinOmega **out);

// Ω of a finite ensemble of `n` sharp states. `momenta` and `blochs` hold
// `3n` doubles each.
//
// # Safety
// `weights` must hold `n` doubles, `momenta` and `blochs` `3n` doubles.
enum RelspinStatus relspin_omega_ensemble(double mass,
                                          size_t n,
                                          const double *weights,
                                          const double *momenta,
                                          const double *blochs,
                                          struct RelspinOmega **out);

// New handle holding `D(A) Ω D(A)⁻¹` for the boost of `rapidity` along
// `axis[3]`.
//
// # Safety
// `omega` must be a live handle; `axis` must hold 3 doubles.
enum RelspinStatus relspin_omega_boost(const struct RelspinOmega *omega,
                                       const double *axis,
                                       double rapidity,
                                       struct RelspinOmega **out);

// # Safety
// `omega` must be a live handle; `out` must be writable.
enum RelspinStatus relspin_omega_decompose(const struct RelspinOmega *omega,
                                           struct RelspinDecomposition *out);

// Von Neumann entropy of the normalized `θ = Ωγ⁰`.
//
// # Safety
// `omega` must be a live handle; `out` must be writable.
enum RelspinStatus relspin_omega_entropy(const struct RelspinOmega *omega, double *out);

// Normalized spin average, written to `out[3]`.
//
// # Safety
// `omega` must be a live handle; `out` must hold 3 doubles.
enum RelspinStatus relspin_omega_sigma_average(const struct RelspinOmega *omega, double *out);

// Row-major real and imaginary parts of Ω, 16 doubles each.
//
// # Safety
// `omega` must be a live handle; `re` and `im` must hold 16 doubles.
enum RelspinStatus relspin_omega_matrix(const struct RelspinOmega *omega, double *re, double *im);

// # Safety
// `omega` must be NULL or a handle not yet freed.
void relspin_omega_free(struct RelspinOmega *omega);

// Singlet correlation function from the trace formula and the closed form.
//
// # Safety
// `k`, `p`, `a`, `b` must hold 3 doubles; outputs must be writable.
enum RelspinStatus relspin_correlation_singlet(double mass,
                                               const double *k,
                                               const double *p,
                                               const double *a,
                                               const double *b,
                                               double *out_trace,
                                               double *out_closed);

// `β² / (2 − β²)` for `0 ≤ β < 1`.
//
// # Safety
// `out` must be writable.
enum RelspinStatus relspin_special_config_correlation(double beta, double *out);

// RK4 integration of the BMT system for `steps` steps of proper time
// `dtau`; the trajectory holds `steps + 1` rows.
//
// # Safety
// `field` and `particle` must be readable; `out` must be writable.
enum RelspinStatus relspin_bmt_integrate(const struct RelspinField *field,
                                         const struct RelspinParticle *particle,
                                         double dtau,
                                         size_t steps,
                                         struct RelspinTrajectory **out);

// Number of rows, or 0 for NULL.
//
// # Safety
// `traj` must be NULL or a live handle.
size_t relspin_trajectory_len(const struct RelspinTrajectory *traj);

// # Safety
// `traj` must be a live handle; `out` must be writable.
enum RelspinStatus relspin_trajectory_row(const struct RelspinTrajectory *traj,
                                          size_t index,
                                          struct RelspinTrajectoryRow *out);

// # Safety
// `traj` must be NULL or a handle not yet freed.
void relspin_trajectory_free(struct RelspinTrajectory *traj);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RELSPIN_H */
