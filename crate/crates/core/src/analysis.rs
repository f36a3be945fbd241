//! Photon-subtraction analysis: decides whether subtracting a photon in one
//! mode (g) makes the Wigner function of a remote mode (f) negative, and
//! quantifies the attainable negativity.
//!
//! The decision chain works on the two-mode restriction [`ModePair`]:
//! the conditional covariance `V_{g|f} = V_g - V_fg^T V_f^{-1} V_fg` is
//! Williamson-decomposed as `nu S^T S`; subtraction makes mode f negative
//! iff `tr V_{g|f} < 2`, and some local Gaussian pre-operation `R` on g can
//! make it negative iff `nu < 1` (the optimum is `R = S^{-1}`, which brings
//! the trace down to `2 nu`). `nu < 1` is exactly the condition that mode g
//! steers mode f, so remote negativity and steering coincide.
//!
//! A Gaussian pre-operation `R` (a single-mode symplectic matrix) enters all
//! formulas through the substitutions `V_g -> R^T V_g R`, `V_fg -> V_fg R`,
//! `xi_g -> R^T xi_g`.

use nalgebra::Vector2;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::state::ModePair;
use crate::symplectic::{invert_spd_2x2, williamson_2x2, Cov2};
use crate::tol;

/// Everything the steering analysis has to say about one mode pair.
#[derive(Debug, Clone)]
pub struct SteeringReport {
    /// Conditional covariance `V_{g|f}` (bare, before any pre-operation).
    pub v_conditional: Cov2,
    /// Symplectic eigenvalue of `V_{g|f}`.
    pub nu: f64,
    /// Symmetric positive-definite Williamson factor of `V_{g|f}`.
    pub s: Cov2,
    /// The trace-optimal Gaussian pre-operation on g: `R_opt = S^{-1}`.
    pub r_opt: Cov2,
    /// `tr V_{g|f}`.
    pub tr_conditional: f64,
    /// `tr[R_opt^T V_{g|f} R_opt]`, equal to `2 nu` up to rounding.
    pub tr_conditional_opt: f64,
    /// Bare subtraction already yields negativity: `tr V_{g|f} < 2`.
    pub negativity_bare: bool,
    /// Some pre-operation yields negativity: `nu < 1` (steering).
    pub negativity_steered: bool,
    /// The bare verdict sits within [`tol::BOUNDARY_BAND`] of its threshold.
    pub marginal_bare: bool,
    /// The steered verdict sits within [`tol::BOUNDARY_BAND`] of `nu = 1`.
    pub marginal_steered: bool,
    /// Wigner minimum of the subtracted remote mode with `R = I`;
    /// `None` when the subtraction or its minimum is undefined.
    pub w_min_bare: Option<f64>,
    /// Wigner minimum with the optimal pre-operation `R = R_opt`.
    pub w_min_opt: Option<f64>,
}

/// The pair data after applying a Gaussian pre-operation to mode g.
struct Transformed {
    v_g: Cov2,
    v_fg: Cov2,
    xi_g: Vector2<f64>,
}

fn check_pre_op(r: &Cov2) -> Result<()> {
    let det = r[(0, 0)] * r[(1, 1)] - r[(0, 1)] * r[(1, 0)];
    if !det.is_finite() || (det - 1.0).abs() > tol::SYMPLECTIC_DEFECT {
        return Err(Error::NotSymplectic { defect: (det - 1.0).abs() });
    }
    Ok(())
}

fn transform(pair: &ModePair, r: &Cov2) -> Transformed {
    Transformed {
        v_g: r.transpose() * pair.v_g * r,
        v_fg: pair.v_fg * r,
        xi_g: r.transpose() * pair.xi_g,
    }
}

/// Mean photon number of mode g after the pre-operation, times four:
/// `tr V_g + |xi_g|^2 - 2`. This normalizes the subtracted state.
fn photon_denominator(t: &Transformed) -> f64 {
    t.v_g.trace() + t.xi_g.norm_squared() - 2.0
}

/// Wigner function of the remote mode f after a photon subtraction in mode
/// g, evaluated at the phase-space point `beta = (x, p)`.
///
/// The pre-operation `r` must be a single-mode symplectic (unit-determinant)
/// matrix; pass the identity for bare subtraction. Errors if mode g carries
/// no photons after the pre-operation, or if `V_f` cannot be inverted.
pub fn reduced_subtracted_wigner(pair: &ModePair, r: &Cov2, beta: &Vector2<f64>) -> Result<f64> {
    check_pre_op(r)?;
    let t = transform(pair, r);
    let denom = photon_denominator(&t);
    if denom <= tol::NO_PHOTON {
        return Err(Error::NoPhotonToSubtract { mean_photons: denom / 4.0 });
    }
    let v_f_inv = invert_spd_2x2(&pair.v_f)?;
    let det_v_f = pair.v_f[(0, 0)] * pair.v_f[(1, 1)] - pair.v_f[(0, 1)] * pair.v_f[(1, 0)];

    let centered = beta - pair.xi_f;
    let envelope = (-0.5 * centered.dot(&(v_f_inv * centered))).exp();

    // Polynomial factor: |V_gf V_f^{-1} (beta - xi_f) + xi_g|^2 + tr V_{g|f} - 2,
    // with all g-side quantities carrying the pre-operation.
    let steer = t.v_fg.transpose() * v_f_inv; // V_gf V_f^{-1}, transformed
    let shifted = steer * centered + t.xi_g;
    let v_cond =
        crate::symplectic::conditional_covariance(&pair.v_f, &t.v_g, &t.v_fg)?;
    let poly = shifted.norm_squared() + v_cond.trace() - 2.0;

    Ok(envelope * poly / (TAU * det_v_f.sqrt() * denom))
}

/// Phase-space point where the polynomial factor of the subtracted Wigner
/// function attains its minimum: `beta* = xi_f - V_f (V_fg^T)^{-1} xi_g`
/// (independent of the pre-operation). With `xi_g = 0` this is `xi_f`
/// regardless of `V_fg`; with `xi_g != 0` it needs `V_fg` invertible.
pub fn minimum_location(pair: &ModePair) -> Result<Vector2<f64>> {
    if pair.xi_g == Vector2::zeros() {
        return Ok(pair.xi_f);
    }
    let det = pair.v_fg[(0, 0)] * pair.v_fg[(1, 1)] - pair.v_fg[(0, 1)] * pair.v_fg[(1, 0)];
    let scale = pair.v_fg.amax();
    if det.abs() <= 1e-14 * scale * scale {
        return Err(Error::UndefinedMinimumLocation);
    }
    // (V_fg^T)^{-1} = adj(V_fg^T) / det
    let inv_t = Cov2::new(
        pair.v_fg[(1, 1)],
        -pair.v_fg[(1, 0)],
        -pair.v_fg[(0, 1)],
        pair.v_fg[(0, 0)],
    ) / det;
    Ok(pair.xi_f - pair.v_f * inv_t * pair.xi_g)
}

/// Value of the subtracted-state Wigner function at the polynomial minimum
/// point. When mode g is undisplaced this is the global minimum of the
/// function; it is negative exactly when `tr[R^T V_{g|f} R] < 2`.
///
/// In closed form:
/// `w_min = (tr[R^T V_{g|f} R] - 2) E / (2 pi sqrt(det V_f) (tr[R^T V_g R] + |R^T xi_g|^2 - 2))`
/// with the displacement suppression
/// `E = exp(-1/2 xi_g^T V_fg^{-1} V_f V_fg^{-T} xi_g)`.
pub fn w_min(pair: &ModePair, r: &Cov2) -> Result<f64> {
    check_pre_op(r)?;
    let t = transform(pair, r);
    let denom = photon_denominator(&t);
    if denom <= tol::NO_PHOTON {
        return Err(Error::NoPhotonToSubtract { mean_photons: denom / 4.0 });
    }
    // Validates V_f and computes det on the way.
    invert_spd_2x2(&pair.v_f)?;
    let det_v_f = pair.v_f[(0, 0)] * pair.v_f[(1, 1)] - pair.v_f[(0, 1)] * pair.v_f[(1, 0)];

    let v_cond = crate::symplectic::conditional_covariance(&pair.v_f, &t.v_g, &t.v_fg)?;

    let suppression = if pair.xi_g == Vector2::zeros() {
        1.0
    } else {
        let beta_star = minimum_location(pair)?;
        let centered = beta_star - pair.xi_f;
        let v_f_inv = invert_spd_2x2(&pair.v_f)?;
        (-0.5 * centered.dot(&(v_f_inv * centered))).exp()
    };

    Ok((v_cond.trace() - 2.0) * suppression / (TAU * det_v_f.sqrt() * denom))
}

/// Run the full steering analysis on a mode pair.
///
/// Errors propagate from the conditional-covariance and Williamson steps
/// (ill-conditioned or unphysical marginals). The Wigner minima are reported
/// as `None` when they are undefined for the pair (no photon to subtract, or
/// displaced g with singular cross covariance); every other field is always
/// available.
pub fn analyze(pair: &ModePair) -> Result<SteeringReport> {
    let v_conditional = pair.conditional_covariance()?;
    let factors = williamson_2x2(&v_conditional)?;
    let nu = factors.nu;
    let s = factors.s;
    // S has unit determinant, so its inverse is its adjugate.
    let r_opt = Cov2::new(s[(1, 1)], -s[(0, 1)], -s[(1, 0)], s[(0, 0)]);

    let tr_conditional = v_conditional.trace();
    let tr_conditional_opt = (r_opt.transpose() * v_conditional * r_opt).trace();

    let w_for = |r: &Cov2| -> Result<Option<f64>> {
        match w_min(pair, r) {
            Ok(w) => Ok(Some(w)),
            Err(Error::NoPhotonToSubtract { .. }) | Err(Error::UndefinedMinimumLocation) => {
                Ok(None)
            }
            Err(e) => Err(e),
        }
    };
    let w_min_bare = w_for(&Cov2::identity())?;
    let w_min_opt = w_for(&r_opt)?;

    Ok(SteeringReport {
        v_conditional,
        nu,
        s,
        r_opt,
        tr_conditional,
        tr_conditional_opt,
        negativity_bare: tr_conditional < 2.0,
        negativity_steered: nu < 1.0,
        marginal_bare: (tr_conditional - 2.0).abs() <= tol::BOUNDARY_BAND,
        marginal_steered: (nu - 1.0).abs() <= tol::BOUNDARY_BAND,
        w_min_bare,
        w_min_opt,
    })
}

/// Rectangular phase-space window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerWindow {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
}

impl WignerWindow {
    /// The square window `[-half, half]^2`.
    pub fn symmetric(half: f64) -> Self {
        WignerWindow { x_min: -half, x_max: half, p_min: -half, p_max: half }
    }
}

/// Wigner function sampled on a regular grid, together with the analytic
/// minimum when one is defined. Values are stored row-major with x as the
/// slow index: `values[ix * np + ip]`.
#[derive(Debug, Clone)]
pub struct WignerGrid {
    pub window: WignerWindow,
    pub nx: usize,
    pub np: usize,
    pub values: Vec<f64>,
    /// Closed-form minimum value, when the producing routine knows it.
    pub w_min: Option<f64>,
    /// Phase-space location of that minimum.
    pub min_location: Option<(f64, f64)>,
}

impl WignerGrid {
    pub fn x_at(&self, ix: usize) -> f64 {
        lerp(self.window.x_min, self.window.x_max, ix, self.nx)
    }

    pub fn p_at(&self, ip: usize) -> f64 {
        lerp(self.window.p_min, self.window.p_max, ip, self.np)
    }

    pub fn value(&self, ix: usize, ip: usize) -> f64 {
        self.values[ix * self.np + ip]
    }

    /// Riemann approximation of the phase-space integral: cell area times
    /// the sum of samples. Converges to 1 for windows that capture the
    /// state's support.
    pub fn quadrature_sum(&self) -> f64 {
        let dx = (self.window.x_max - self.window.x_min) / (self.nx - 1) as f64;
        let dp = (self.window.p_max - self.window.p_min) / (self.np - 1) as f64;
        self.values.iter().sum::<f64>() * dx * dp
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Largest absolute pointwise deviation from another grid with the same
    /// shape.
    pub fn sup_distance(&self, other: &WignerGrid) -> Result<f64> {
        if self.nx != other.nx || self.np != other.np || self.window != other.window {
            return Err(Error::InvalidInput(
                "grids have different windows or resolutions".into(),
            ));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

fn lerp(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    lo + (hi - lo) * i as f64 / (n - 1) as f64
}

fn check_grid_shape(window: &WignerWindow, nx: usize, np: usize) -> Result<()> {
    if nx < 2 || np < 2 {
        return Err(Error::InvalidInput(format!(
            "grid resolution must be at least 2x2, got {nx}x{np}"
        )));
    }
    if !(window.x_min < window.x_max && window.p_min < window.p_max) {
        return Err(Error::InvalidInput("window bounds must be increasing".into()));
    }
    Ok(())
}

/// Sample the subtracted-state Wigner function of mode f on a regular grid.
pub fn wigner_grid(
    pair: &ModePair,
    r: &Cov2,
    window: WignerWindow,
    nx: usize,
    np: usize,
) -> Result<WignerGrid> {
    check_grid_shape(&window, nx, np)?;
    let mut values = Vec::with_capacity(nx * np);
    for ix in 0..nx {
        let x = lerp(window.x_min, window.x_max, ix, nx);
        for ip in 0..np {
            let p = lerp(window.p_min, window.p_max, ip, np);
            values.push(reduced_subtracted_wigner(pair, r, &Vector2::new(x, p))?);
        }
    }
    let w_min_value = w_min(pair, r).ok();
    let min_location = minimum_location(pair).ok().map(|b| (b[0], b[1]));
    Ok(WignerGrid { window, nx, np, values, w_min: w_min_value, min_location })
}
