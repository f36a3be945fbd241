//! C ABI for the steerwig Gaussian-state photon-subtraction analyzer.
//!
//! Conventions, shared by every function in this header:
//!
//! - Every fallible call returns a [`SteerwigStatus`]; computed values travel
//!   through out-pointers, which are written only when the call returns
//!   [`SteerwigStatus::Ok`].
//! - States are opaque handles. They are created by the `steerwig_*_new`
//!   constructors, are never exposed by layout, and must be released exactly
//!   once with [`steerwig_state_free`].
//! - A human-readable message for the most recent failure on the current
//!   thread can be fetched with [`steerwig_last_error_message`].
//! - Panics never unwind across the boundary; they are caught and surfaced
//!   as [`SteerwigStatus::Internal`].
//!
//! Numeric conventions match the core library: quadratures satisfy
//! `[x, p] = 2i`, the vacuum covariance is the identity, and squeezing
//! parameters are quoted in dB of variance ratio.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use steerwig::analysis::{self, SteeringReport};
use steerwig::error::Error;
use steerwig::factories::{epr_state, graph_state, Graph, Squeezing, ThermalNoise};
use steerwig::nalgebra::Vector2;
use steerwig::state::GaussianState;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteerwigStatus {
    /// Success; all out-parameters have been written.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A parameter was outside its domain: unphysical noise or squeezing,
    /// a mode index out of range, identical f and g, or a malformed graph.
    /// Details via [`steerwig_last_error_message`].
    InvalidArgument = 2,
    /// The subtraction mode is indistinguishable from vacuum, so the
    /// photon-subtracted state (and everything derived from it) is undefined.
    NoPhoton = 3,
    /// An internal invariant failed (caught panic). Not expected in normal use.
    Internal = 4,
}

/// Opaque handle to a multimode Gaussian state.
pub struct SteerwigState {
    inner: GaussianState,
}

/// Flat report on remote negativity generation for one ordered mode pair
/// (f, g): photons are subtracted in g, negativity is sought in f.
///
/// `w_min_bare` / `w_min_opt` are meaningful only when the corresponding
/// `*_defined` flag is nonzero; they are left at 0 otherwise (the minimum is
/// undefined when there is no photon to subtract).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SteerwigReport {
    /// Symplectic eigenvalue of the conditional covariance of g given f.
    /// Values below 1 certify that f can steer g.
    pub nu: f64,
    /// Trace of the conditional covariance; below 2 means photon subtraction
    /// alone prepares a negative Wigner function in f.
    pub tr_conditional: f64,
    /// The same trace after the optimal local symplectic on g; equals 2·nu.
    pub tr_conditional_opt: f64,
    /// Optimal pre-subtraction symplectic on g, row-major 2×2.
    pub r_opt: [f64; 4],
    /// Minimum of the remote Wigner function with no pre-operation.
    pub w_min_bare: f64,
    /// Minimum of the remote Wigner function after applying `r_opt`.
    pub w_min_opt: f64,
    /// Nonzero when `tr_conditional < 2`.
    pub negativity_bare: i32,
    /// Nonzero when `nu < 1`.
    pub negativity_steered: i32,
    /// Nonzero when `w_min_bare` is defined.
    pub w_min_bare_defined: i32,
    /// Nonzero when `w_min_opt` is defined.
    pub w_min_opt_defined: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    // CString cannot hold interior NULs; error texts never contain them, but
    // replace defensively rather than lose the message.
    let sanitized = message.replace('\0', " ");
    let stored = CString::new(sanitized).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn fail(err: Error) -> SteerwigStatus {
    set_last_error(&err.to_string());
    match err {
        Error::NoPhotonToSubtract { .. } => SteerwigStatus::NoPhoton,
        _ => SteerwigStatus::InvalidArgument,
    }
}

/// Run `body` with a panic guard so unwinding never crosses the C boundary.
fn guarded(body: impl FnOnce() -> SteerwigStatus) -> SteerwigStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(&format!("internal panic: {message}"));
            SteerwigStatus::Internal
        }
    }
}

/// Message describing the most recent failure on the calling thread, or null
/// if nothing has failed yet. The pointer stays valid until the next failing
/// steerwig call on the same thread; copy the string if it must outlive that.
#[no_mangle]
pub extern "C" fn steerwig_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |msg| msg.as_ptr())
    })
}

/// Library version as a static NUL-terminated string (never null).
#[no_mangle]
pub extern "C" fn steerwig_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Create a two-mode EPR-type state: two thermal squeezed modes (squeezing
/// `s1_db` and `s2_db` in dB, common thermal factor `n >= 1`, orthogonal
/// squeezing orientations) mixed on a balanced beamsplitter.
///
/// On success writes a fresh handle to `out`; release it with
/// [`steerwig_state_free`].
///
/// # Safety
/// `out` must point to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn steerwig_epr_state_new(
    s1_db: f64,
    s2_db: f64,
    n: f64,
    out: *mut *mut SteerwigState,
) -> SteerwigStatus {
    if out.is_null() {
        set_last_error("out pointer is null");
        return SteerwigStatus::NullPointer;
    }
    guarded(|| {
        let built = (|| {
            let s1 = Squeezing::from_db(s1_db)?;
            let s2 = Squeezing::from_db(s2_db)?;
            let noise = ThermalNoise::new(n)?;
            Ok(epr_state(s1, s2, noise))
        })();
        match built {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(SteerwigState { inner }));
                SteerwigStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Create a graph state: one thermal squeezed mode per vertex (squeezing
/// `s_db` in dB, thermal factor `n >= 1`), entangled along the edges.
///
/// `edges` is a flat array of `2 * edge_count` vertex indices
/// `[a0, b0, a1, b1, ...]`, 0-based, each `< vertices`; it may be null when
/// `edge_count` is 0. Self-loops are rejected; duplicate edges collapse.
///
/// On success writes a fresh handle to `out`; release it with
/// [`steerwig_state_free`].
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable `uint32_t` values (or be
/// null when `edge_count` is 0), and `out` must point to writable memory for
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn steerwig_graph_state_new(
    vertices: u32,
    edges: *const u32,
    edge_count: usize,
    s_db: f64,
    n: f64,
    out: *mut *mut SteerwigState,
) -> SteerwigStatus {
    if out.is_null() || (edges.is_null() && edge_count > 0) {
        set_last_error("out or edges pointer is null");
        return SteerwigStatus::NullPointer;
    }
    let pairs: Vec<(usize, usize)> = if edge_count == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(edges, 2 * edge_count)
            .chunks_exact(2)
            .map(|e| (e[0] as usize, e[1] as usize))
            .collect()
    };
    guarded(|| {
        let built = (|| {
            let graph = Graph::from_edges(vertices as usize, &pairs)?;
            let s = Squeezing::from_db(s_db)?;
            let noise = ThermalNoise::new(n)?;
            graph_state(&graph, s, noise)
        })();
        match built {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(SteerwigState { inner }));
                SteerwigStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Release a state handle. Passing null is a no-op.
///
/// # Safety
/// `state` must be null or a pointer obtained from a `steerwig_*_new`
/// constructor that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn steerwig_state_free(state: *mut SteerwigState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Number of modes in the state, or 0 when `state` is null.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn steerwig_state_modes(state: *const SteerwigState) -> usize {
    if state.is_null() {
        return 0;
    }
    (*state).inner.modes()
}

fn fill_report(report: &SteeringReport) -> SteerwigReport {
    let r = &report.r_opt;
    SteerwigReport {
        nu: report.nu,
        tr_conditional: report.tr_conditional,
        tr_conditional_opt: report.tr_conditional_opt,
        r_opt: [r[(0, 0)], r[(0, 1)], r[(1, 0)], r[(1, 1)]],
        w_min_bare: report.w_min_bare.unwrap_or(0.0),
        w_min_opt: report.w_min_opt.unwrap_or(0.0),
        negativity_bare: report.negativity_bare as i32,
        negativity_steered: report.negativity_steered as i32,
        w_min_bare_defined: report.w_min_bare.is_some() as i32,
        w_min_opt_defined: report.w_min_opt.is_some() as i32,
    }
}

/// Analyze the ordered mode pair (f, g) of `state`: photon subtraction in
/// mode `g_index`, remote negativity in mode `f_index`. Writes the full
/// report to `out`.
///
/// # Safety
/// `state` must be a live handle and `out` must point to writable memory for
/// one [`SteerwigReport`].
#[no_mangle]
pub unsafe extern "C" fn steerwig_analyze(
    state: *const SteerwigState,
    f_index: usize,
    g_index: usize,
    out: *mut SteerwigReport,
) -> SteerwigStatus {
    if state.is_null() || out.is_null() {
        set_last_error("state or out pointer is null");
        return SteerwigStatus::NullPointer;
    }
    guarded(|| {
        let computed = (*state)
            .inner
            .extract_canonical_pair(f_index, g_index)
            .and_then(|pair| analysis::analyze(&pair));
        match computed {
            Ok(report) => {
                *out = fill_report(&report);
                SteerwigStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Evaluate the Wigner function of mode `f_index` after photon subtraction
/// in mode `g_index`, at the phase-space point (x, p). When `use_optimal_r`
/// is nonzero the optimal local symplectic is applied to mode g before the
/// subtraction; otherwise the subtraction acts on g as-is.
///
/// Fails with [`SteerwigStatus::NoPhoton`] when mode g carries no photons.
///
/// # Safety
/// `state` must be a live handle and `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn steerwig_wigner_value(
    state: *const SteerwigState,
    f_index: usize,
    g_index: usize,
    use_optimal_r: i32,
    x: f64,
    p: f64,
    out: *mut f64,
) -> SteerwigStatus {
    if state.is_null() || out.is_null() {
        set_last_error("state or out pointer is null");
        return SteerwigStatus::NullPointer;
    }
    guarded(|| {
        let computed = (|| {
            let pair = (*state).inner.extract_canonical_pair(f_index, g_index)?;
            let r = if use_optimal_r != 0 {
                analysis::analyze(&pair)?.r_opt
            } else {
                steerwig::nalgebra::Matrix2::identity()
            };
            analysis::reduced_subtracted_wigner(&pair, &r, &Vector2::new(x, p))
        })();
        match computed {
            Ok(value) => {
                *out = value;
                SteerwigStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}
