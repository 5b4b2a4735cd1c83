#ifndef OSCBRIDGE_H
#define OSCBRIDGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum OscStatus {
  OSC_STATUS_OK = 0,
  OSC_STATUS_NULL_POINTER = 1,
  OSC_STATUS_INVALID_ARGUMENT = 2,
  OSC_STATUS_OUT_OF_RANGE = 3,
  OSC_STATUS_ZERO_TEMPERATURE = 4,
  OSC_STATUS_NUMERICAL = 5,
  OSC_STATUS_PANIC = 6,
} OscStatus;

/**
 * Opaque handle to a tabulated reduced density kernel.
 */
typedef struct OscDensityKernel OscDensityKernel;

/**
 * Opaque handle to the eigenvalues of the traced density matrix.
 */
typedef struct OscReducedState OscReducedState;

/**
 * Normal-mode decomposition of the coupled pair.
 */
typedef struct OscNormalModes {
  double k;
  double eta;
  double omega;
  double omega_plus;
  double omega_minus;
} OscNormalModes;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *osc_last_error_message(void);

/**
 * Static description of a status code.
 */
const char *osc_status_message(enum OscStatus status);

/**
 * Normal modes for mass `m`, stiffness `a` and coupling `c`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum OscStatus osc_normal_modes(double m, double a, double c, struct OscNormalModes *out);

/**
 * Ground-state wave function of the coupled pair at `(x1, x2)`.
 */
double osc_ground_state(double x1, double x2, double eta);

/**
 * Normalized Hermite function of order `k` at `x`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum OscStatus osc_hermite_fn(size_t k, double x, double *out);

/**
 * `1 / cosh(eta)`.
 */
double osc_purity(double eta);

/**
 * Von Neumann entropy of either oscillator.
 */
double osc_entropy(double eta);

/**
 * Thermal-oscillator entropy at `x = omega / T`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum OscStatus osc_thermal_entropy(double x, double *out);

/**
 * Effective temperature and `omega / T`. Either out pointer may be null.
 *
 * # Safety
 * Each out pointer must be null or valid for writes.
 */
enum OscStatus osc_effective_temperature(double eta, double omega, double *temperature, double *x);

/**
 * Boosts `(z, t)` in place by rapidity `eta`.
 *
 * # Safety
 * `z` and `t` must be null or valid for reads and writes.
 */
enum OscStatus osc_boost_point(double *z, double *t, double eta);

/**
 * Boosted spacetime wave function.
 */
double osc_boosted_wavefunction(double z, double t, double eta);

/**
 * Boosted momentum-space wave function.
 */
double osc_momentum_wavefunction(double qz, double q0, double eta);

/**
 * Width `sqrt(cosh(eta) / 2)` of the longitudinal marginal.
 */
double osc_width(double eta);

/**
 * Builds the truncated eigenvalue list `p_0..p_kmax`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum OscStatus osc_reduced_state_new(double eta, size_t k_max, struct OscReducedState **out);

/**
 * Number of stored eigenvalues, `k_max + 1`. Zero for a null handle.
 *
 * # Safety
 * `state` must be null or a live handle from [`osc_reduced_state_new`].
 */
size_t osc_reduced_state_len(const struct OscReducedState *state);

/**
 * Copies up to `capacity` eigenvalues into `buf` and reports how many were written.
 *
 * # Safety
 * `state` must be a live handle and `buf` valid for `capacity` writes.
 */
enum OscStatus osc_reduced_state_eigenvalues(const struct OscReducedState *state,
                                             double *buf,
                                             size_t capacity,
                                             size_t *written);

/**
 * Series purity and entropy of the truncated state. Either out pointer may be null.
 *
 * # Safety
 * `state` must be a live handle.
 */
enum OscStatus osc_reduced_state_summary(const struct OscReducedState *state,
                                         double *purity,
                                         double *entropy);

/**
 * Releases a reduced state. Null is ignored.
 *
 * # Safety
 * `state` must be null or a handle not yet freed.
 */
void osc_reduced_state_free(struct OscReducedState *state);

/**
 * Tabulates the reduced density kernel on an `n`-node grid over `[-extent, extent]`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum OscStatus osc_density_kernel_new(double eta,
                                      size_t n,
                                      double extent,
                                      struct OscDensityKernel **out);

/**
 * Quadrature trace of the kernel.
 *
 * # Safety
 * `kernel` must be a live handle.
 */
enum OscStatus osc_density_kernel_trace(const struct OscDensityKernel *kernel, double *out);

/**
 * Quadrature purity `Tr rho^2` of the kernel.
 *
 * # Safety
 * `kernel` must be a live handle.
 */
enum OscStatus osc_density_kernel_purity(const struct OscDensityKernel *kernel, double *out);

/**
 * Projection `<k|rho|k>` onto the `k`-th oscillator state.
 *
 * # Safety
 * `kernel` must be a live handle.
 */
enum OscStatus osc_density_kernel_fock_projection(const struct OscDensityKernel *kernel,
                                                  size_t k,
                                                  double *out);

/**
 * Releases a density kernel. Null is ignored.
 *
 * # Safety
 * `kernel` must be null or a handle not yet freed.
 */
void osc_density_kernel_free(struct OscDensityKernel *kernel);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* OSCBRIDGE_H */
