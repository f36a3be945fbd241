/* C interface for the steerwig Gaussian-state photon-subtraction analyzer. */

#ifndef STEERWIG_H
#define STEERWIG_H

/* Generated by cbindgen from the steerwig-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum {
  /**
   * Success; all out-parameters have been written.
   */
  STEERWIG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  STEERWIG_STATUS_NULL_POINTER = 1,
  /**
   * A parameter was outside its domain: unphysical noise or squeezing,
   * a mode index out of range, identical f and g, or a malformed graph.
   * Details via [`steerwig_last_error_message`].
   */
  STEERWIG_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The subtraction mode is indistinguishable from vacuum, so the
   * photon-subtracted state (and everything derived from it) is undefined.
   */
  STEERWIG_STATUS_NO_PHOTON = 3,
  /**
   * An internal invariant failed (caught panic). Not expected in normal use.
   */
  STEERWIG_STATUS_INTERNAL = 4,
} SteerwigStatus;

/**
 * Opaque handle to a multimode Gaussian state.
 */
typedef struct SteerwigState SteerwigState;

/**
 * Flat report on remote negativity generation for one ordered mode pair
 * (f, g): photons are subtracted in g, negativity is sought in f.
 *
 * `w_min_bare` / `w_min_opt` are meaningful only when the corresponding
 * `*_defined` flag is nonzero; they are left at 0 otherwise (the minimum is
 * undefined when there is no photon to subtract).
 */
typedef struct {
  /**
   * Symplectic eigenvalue of the conditional covariance of g given f.
   * Values below 1 certify that f can steer g.
   */
  double nu;
  /**
   * Trace of the conditional covariance; below 2 means photon subtraction
   * alone prepares a negative Wigner function in f.
   */
  double tr_conditional;
  /**
   * The same trace after the optimal local symplectic on g; equals 2·nu.
   */
  double tr_conditional_opt;
  /**
   * Optimal pre-subtraction symplectic on g, row-major 2×2.
   */
  double r_opt[4];
  /**
   * Minimum of the remote Wigner function with no pre-operation.
   */
  double w_min_bare;
  /**
   * Minimum of the remote Wigner function after applying `r_opt`.
   */
  double w_min_opt;
  /**
   * Nonzero when `tr_conditional < 2`.
   */
  int32_t negativity_bare;
  /**
   * Nonzero when `nu < 1`.
   */
  int32_t negativity_steered;
  /**
   * Nonzero when `w_min_bare` is defined.
   */
  int32_t w_min_bare_defined;
  /**
   * Nonzero when `w_min_opt` is defined.
   */
  int32_t w_min_opt_defined;
} SteerwigReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on the calling thread, or null
 * if nothing has failed yet. The pointer stays valid until the next failing
 * steerwig call on the same thread; copy the string if it must outlive that.
 */
const char *steerwig_last_error_message(void);

/**
 * Library version as a static NUL-terminated string (never null).
 */
const char *steerwig_version(void);

/**
 * Create a two-mode EPR-type state: two thermal squeezed modes (squeezing
 * `s1_db` and `s2_db` in dB, common thermal factor `n >= 1`, orthogonal
 * squeezing orientations) mixed on a balanced beamsplitter.
 *
 * On success writes a fresh handle to `out`; release it with
 * [`steerwig_state_free`].
 *
 * # Safety
 * `out` must point to writable memory for one pointer.
 */
SteerwigStatus steerwig_epr_state_new(double s1_db, double s2_db, double n, SteerwigState **out);

/**
 * Create a graph state: one thermal squeezed mode per vertex (squeezing
 * `s_db` in dB, thermal factor `n >= 1`), entangled along the edges.
 *
 * `edges` is a flat array of `2 * edge_count` vertex indices
 * `[a0, b0, a1, b1, ...]`, 0-based, each `< vertices`; it may be null when
 * `edge_count` is 0. Self-loops are rejected; duplicate edges collapse.
 *
 * On success writes a fresh handle to `out`; release it with
 * [`steerwig_state_free`].
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable `uint32_t` values (or be
 * null when `edge_count` is 0), and `out` must point to writable memory for
 * one pointer.
 */
SteerwigStatus steerwig_graph_state_new(uint32_t vertices,
                                        const uint32_t *edges,
                                        size_t edge_count,
                                        double s_db,
                                        double n,
                                        SteerwigState **out);

/**
 * Release a state handle. Passing null is a no-op.
 *
 * # Safety
 * `state` must be null or a pointer obtained from a `steerwig_*_new`
 * constructor that has not been freed yet.
 */
void steerwig_state_free(SteerwigState *state);

/**
 * Number of modes in the state, or 0 when `state` is null.
 *
 * # Safety
 * `state` must be null or a live handle.
 */
size_t steerwig_state_modes(const SteerwigState *state);

/**
 * Analyze the ordered mode pair (f, g) of `state`: photon subtraction in
 * mode `g_index`, remote negativity in mode `f_index`. Writes the full
 * report to `out`.
 *
 * # Safety
 * `state` must be a live handle and `out` must point to writable memory for
 * one [`SteerwigReport`].
 */
SteerwigStatus steerwig_analyze(const SteerwigState *state,
                                size_t f_index,
                                size_t g_index,
                                SteerwigReport *out);

/**
 * Evaluate the Wigner function of mode `f_index` after photon subtraction
 * in mode `g_index`, at the phase-space point (x, p). When `use_optimal_r`
 * is nonzero the optimal local symplectic is applied to mode g before the
 * subtraction; otherwise the subtraction acts on g as-is.
 *
 * Fails with [`SteerwigStatus::NoPhoton`] when mode g carries no photons.
 *
 * # Safety
 * `state` must be a live handle and `out` must point to a writable double.
 */
SteerwigStatus steerwig_wigner_value(const SteerwigState *state,
                                     size_t f_index,
                                     size_t g_index,
                                     int32_t use_optimal_r,
                                     double x,
                                     double p,
                                     double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STEERWIG_H */
