//! Brute-force oracle in truncated Fock space.
//!
//! Everything in this module deliberately avoids the Gaussian phase-space
//! shortcut used by [`crate::analysis`]: states are dense two-mode density
//! matrices with a hard photon-number cutoff, operations are matrix
//! exponentials of the usual mode-operator generators, and Wigner functions
//! come from the displaced-parity (Laguerre) series. Agreement between this
//! path and the closed forms is the strongest correctness evidence the crate
//! offers, which is why the two implementations share no code beyond the
//! [`WignerGrid`] container.
//!
//! Conventions match the rest of the crate: `x = a + a^dag`,
//! `p = i(a^dag - a)`, vacuum covariance `I`, so a coherent amplitude
//! `alpha` sits at the phase-space point `(2 Re alpha, 2 Im alpha)`.

use nalgebra::{DMatrix, DVector, Vector2};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, TAU};

use crate::analysis::{WignerGrid, WignerWindow};
use crate::error::{Error, Result};
use crate::factories::{Squeezing, ThermalNoise};
use crate::symplectic::Cov2;
use crate::tol;

/// Truncation settings for the oracle.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Fock-space dimension per mode (occupation numbers `0..cutoff`).
    pub cutoff: usize,
    /// Largest tolerated population on the top occupation level of either
    /// mode; more than this means the cutoff is distorting the state.
    pub leakage_bound: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cutoff: 30, leakage_bound: tol::LEAKAGE_BOUND }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cutoff < 4 {
            return Err(Error::CutoffTooSmall(self.cutoff));
        }
        if !(self.leakage_bound > 0.0) {
            return Err(Error::InvalidInput(format!(
                "leakage bound must be positive, got {}",
                self.leakage_bound
            )));
        }
        Ok(())
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Lowering operator `a` on a `d`-level truncation: `a |n> = sqrt(n) |n-1>`.
pub fn lowering(d: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |i, j| if j == i + 1 { c((j as f64).sqrt()) } else { c(0.0) })
}

/// Number operator `a^dag a`.
pub fn number_op(d: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |i, j| if i == j { c(i as f64) } else { c(0.0) })
}

/// Quadrature `x = a + a^dag`.
pub fn x_op(d: usize) -> DMatrix<Complex64> {
    let a = lowering(d);
    &a + a.adjoint()
}

/// Quadrature `p = i (a^dag - a)`.
pub fn p_op(d: usize) -> DMatrix<Complex64> {
    let a = lowering(d);
    (a.adjoint() - &a) * Complex64::new(0.0, 1.0)
}

/// Exponential of an anti-Hermitian generator, via the Hermitian
/// eigendecomposition of `i G`. The result is exactly unitary on the
/// truncated space up to rounding.
pub fn expm_anti_hermitian(g: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let h = g.map(|z| z * Complex64::new(0.0, 1.0));
    let eig = h.symmetric_eigen();
    let phases =
        DVector::from_iterator(eig.eigenvalues.len(), eig.eigenvalues.iter().map(|&l| {
            Complex64::from_polar(1.0, -l)
        }));
    &eig.eigenvectors * DMatrix::from_diagonal(&phases) * eig.eigenvectors.adjoint()
}

/// Squeezing unitary `exp((r/2)(a^dag^2 - a^2))`; sends the quadratures to
/// `(x e^r, p e^{-r})`.
pub fn squeeze_unitary(d: usize, r: f64) -> DMatrix<Complex64> {
    let a = lowering(d);
    let adag = a.adjoint();
    let g = (&adag * &adag - &a * &a) * c(r / 2.0);
    expm_anti_hermitian(&g)
}

/// Displacement unitary `exp(alpha a^dag - alpha^* a)`; shifts the mean of
/// `(x, p)` by `(2 Re alpha, 2 Im alpha)`.
pub fn displacement_unitary(d: usize, alpha: Complex64) -> DMatrix<Complex64> {
    let a = lowering(d);
    let g = a.adjoint() * alpha - &a * alpha.conj();
    expm_anti_hermitian(&g)
}

/// Rotation unitary `exp(i theta a^dag a)`; sends the quadratures to
/// `(x cos theta - p sin theta, x sin theta + p cos theta)`. Diagonal, so it
/// is built exactly.
pub fn rotation_unitary(d: usize, theta: f64) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, theta * i as f64)
        } else {
            c(0.0)
        }
    })
}

/// Unitary implementing an arbitrary single-mode symplectic map `t` on the
/// quadratures (state covariance transforms as `t V t^T`), assembled from
/// the Euler decomposition rotation * squeeze * rotation obtained from the
/// singular value decomposition of `t`.
pub fn gaussian_unitary(d: usize, t: &Cov2) -> Result<DMatrix<Complex64>> {
    let det = t[(0, 0)] * t[(1, 1)] - t[(0, 1)] * t[(1, 0)];
    if !det.is_finite() || (det - 1.0).abs() > tol::SYMPLECTIC_DEFECT {
        return Err(Error::NotSymplectic { defect: (det - 1.0).abs() });
    }
    let svd = t.svd(true, true);
    let mut u = svd.u.expect("2x2 SVD always produces U");
    let mut v_t = svd.v_t.expect("2x2 SVD always produces V^T");
    // det t = +1, so det U and det V^T carry the same sign; flipping the
    // second column of U and second row of V^T absorbs a shared reflection
    // without touching the singular values.
    if u.determinant() < 0.0 {
        u[(0, 1)] = -u[(0, 1)];
        u[(1, 1)] = -u[(1, 1)];
        v_t[(1, 0)] = -v_t[(1, 0)];
        v_t[(1, 1)] = -v_t[(1, 1)];
    }
    let theta_u = f64::atan2(u[(1, 0)], u[(0, 0)]);
    let theta_v = f64::atan2(v_t[(1, 0)], v_t[(0, 0)]);
    let r = svd.singular_values[0].ln();
    Ok(rotation_unitary(d, theta_u) * squeeze_unitary(d, r) * rotation_unitary(d, theta_v))
}

/// Dense two-mode density matrix with `cutoff` levels per mode. The flat
/// index of `|n1, n2>` is `n1 * cutoff + n2`; mode 0 plays the remote role
/// (f) and mode 1 the subtraction role (g) throughout the crate.
#[derive(Debug, Clone)]
pub struct TwoModeFock {
    d: usize,
    rho: DMatrix<Complex64>,
}

impl TwoModeFock {
    /// Product of two thermal states with the given mean photon numbers.
    pub fn thermal_pair(d: usize, nbar1: f64, nbar2: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::CutoffTooSmall(d));
        }
        if nbar1 < 0.0 || nbar2 < 0.0 {
            return Err(Error::InvalidInput(format!(
                "thermal occupations must be nonnegative, got {nbar1} and {nbar2}"
            )));
        }
        let geometric = |nbar: f64| -> Vec<f64> {
            if nbar == 0.0 {
                let mut p = vec![0.0; d];
                p[0] = 1.0;
                return p;
            }
            let q = nbar / (nbar + 1.0);
            (0..d).map(|k| (1.0 - q) * q.powi(k as i32)).collect()
        };
        let p1 = geometric(nbar1);
        let p2 = geometric(nbar2);
        let mut rho = DMatrix::zeros(d * d, d * d);
        for n1 in 0..d {
            for n2 in 0..d {
                let idx = n1 * d + n2;
                rho[(idx, idx)] = c(p1[n1] * p2[n2]);
            }
        }
        Ok(TwoModeFock { d, rho })
    }

    pub fn cutoff(&self) -> usize {
        self.d
    }

    pub fn density_matrix(&self) -> &DMatrix<Complex64> {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        (0..self.d * self.d).map(|i| self.rho[(i, i)].re).sum()
    }

    fn hermitize(&mut self) {
        let adj = self.rho.adjoint();
        self.rho = (&self.rho + adj) * c(0.5);
    }

    /// Apply `m (x) I` (mode 0) or `I (x) m` (mode 1) from the left.
    fn left_mode_matrix(&self, mode: usize, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let d = self.d;
        let mut out = DMatrix::zeros(d * d, d * d);
        for col in 0..d * d {
            // Reshape the column into A[n1, n2] = v[n1 * d + n2], hit the
            // chosen index with m, and flatten back.
            let a = DMatrix::from_fn(d, d, |n1, n2| self.rho[(n1 * d + n2, col)]);
            let b = if mode == 0 { m * a } else { a * m.transpose() };
            for n1 in 0..d {
                for n2 in 0..d {
                    out[(n1 * d + n2, col)] = b[(n1, n2)];
                }
            }
        }
        out
    }

    /// Sandwich the state with a single-mode operator: `rho -> m rho m^dag`
    /// acting on the chosen mode. Used with unitaries (trace preserved) and
    /// with the lowering operator (trace becomes the event weight).
    pub fn apply_mode_operator(&mut self, mode: usize, m: &DMatrix<Complex64>) -> Result<()> {
        if mode > 1 {
            return Err(Error::ModeIndex { index: mode, modes: 2 });
        }
        if m.nrows() != self.d || m.ncols() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, actual: m.nrows() });
        }
        let half = TwoModeFock { d: self.d, rho: self.left_mode_matrix(mode, m) };
        // rho m^dag = (m (rho')^dag)^dag applied to the half-transformed state.
        let flipped = TwoModeFock { d: self.d, rho: half.rho.adjoint() };
        self.rho = flipped.left_mode_matrix(mode, m).adjoint();
        self.hermitize();
        Ok(())
    }

    /// Flat basis indices of the total-photon-number sectors, each listed by
    /// ascending occupation of mode 0.
    fn sectors(&self) -> Vec<Vec<usize>> {
        let d = self.d;
        (0..=2 * (d - 1))
            .map(|total| {
                let lo = total.saturating_sub(d - 1);
                let hi = total.min(d - 1);
                (lo..=hi).map(|n1| n1 * d + (total - n1)).collect()
            })
            .collect()
    }

    /// Beamsplitter `exp(theta (a^dag b - a b^dag))` between the two modes;
    /// `theta = pi/4` is balanced. The generator conserves total photon
    /// number, so it is exponentiated exactly within each number sector.
    pub fn apply_beamsplitter(&mut self, theta: f64) {
        let d = self.d;
        let sectors = self.sectors();
        let unitaries: Vec<DMatrix<Complex64>> = sectors
            .iter()
            .enumerate()
            .map(|(total, members)| {
                let k = members.len();
                let mut g = DMatrix::zeros(k, k);
                for i in 0..k.saturating_sub(1) {
                    let n1 = members[i] / d;
                    let n2 = total - n1;
                    // <n1+1, n2-1| a^dag b |n1, n2> = sqrt((n1+1) n2)
                    let amp = theta * ((n1 + 1) as f64 * n2 as f64).sqrt();
                    g[(i + 1, i)] = c(amp);
                    g[(i, i + 1)] = c(-amp);
                }
                expm_anti_hermitian(&g)
            })
            .collect();

        let mut out = DMatrix::zeros(d * d, d * d);
        for (sn, n_members) in sectors.iter().enumerate() {
            for (sm, m_members) in sectors.iter().enumerate() {
                let block = DMatrix::from_fn(n_members.len(), m_members.len(), |i, j| {
                    self.rho[(n_members[i], m_members[j])]
                });
                let transformed = &unitaries[sn] * block * unitaries[sm].adjoint();
                for (i, &row) in n_members.iter().enumerate() {
                    for (j, &col) in m_members.iter().enumerate() {
                        out[(row, col)] = transformed[(i, j)];
                    }
                }
            }
        }
        self.rho = out;
        self.hermitize();
    }

    /// Trace-weighted population of the top occupation level of either mode:
    /// the truncation-quality diagnostic.
    pub fn top_level_population(&self) -> f64 {
        let d = self.d;
        let mut leak = 0.0;
        for n1 in 0..d {
            for n2 in 0..d {
                if n1 == d - 1 || n2 == d - 1 {
                    leak += self.rho[(n1 * d + n2, n1 * d + n2)].re;
                }
            }
        }
        leak
    }

    pub fn check_leakage(&self, bound: f64) -> Result<f64> {
        let leakage = self.top_level_population();
        if leakage > bound {
            return Err(Error::TruncationLeakage { leakage, bound });
        }
        Ok(leakage)
    }

    pub fn mean_photons(&self, mode: usize) -> f64 {
        let d = self.d;
        let mut total = 0.0;
        for n1 in 0..d {
            for n2 in 0..d {
                let n = if mode == 0 { n1 } else { n2 };
                total += n as f64 * self.rho[(n1 * d + n2, n1 * d + n2)].re;
            }
        }
        total
    }

    /// Annihilate one photon in the chosen mode: `rho -> b rho b^dag / w`
    /// with `w = tr[b rho b^dag]` the relative event weight, which is
    /// returned. Errors when the mode carries no photons.
    pub fn subtract_photon(&mut self, mode: usize) -> Result<f64> {
        let weight = self.mean_photons(mode);
        if weight <= tol::NO_PHOTON {
            return Err(Error::NoPhotonToSubtract { mean_photons: weight });
        }
        self.apply_mode_operator(mode, &lowering(self.d))?;
        self.rho /= c(weight);
        Ok(weight)
    }

    /// Reduced density matrix of one mode.
    pub fn partial_trace_keep(&self, mode: usize) -> DMatrix<Complex64> {
        let d = self.d;
        DMatrix::from_fn(d, d, |n, m| {
            let mut acc = c(0.0);
            for k in 0..d {
                let (row, col) = if mode == 0 { (n * d + k, m * d + k) } else { (k * d + n, k * d + m) };
                acc += self.rho[(row, col)];
            }
            acc
        })
    }

    /// `tr[rho (a (x) b)]` with `a` acting on mode 0 and `b` on mode 1.
    fn expect_product(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
        let d = self.d;
        let mut total = c(0.0);
        for n1 in 0..d {
            for m1 in 0..d {
                let mut inner = c(0.0);
                for n2 in 0..d {
                    for m2 in 0..d {
                        inner += self.rho[(n1 * d + n2, m1 * d + m2)] * b[(m2, n2)];
                    }
                }
                total += a[(m1, n1)] * inner;
            }
        }
        total
    }

    /// First and symmetrized second quadrature moments, in the same
    /// interleaved `(x1, p1, x2, p2)` layout and vacuum normalization as
    /// [`crate::state::GaussianState`].
    pub fn covariance_and_mean(&self) -> (DMatrix<f64>, DVector<f64>) {
        let d = self.d;
        let eye = DMatrix::<Complex64>::identity(d, d);
        let quads = [x_op(d), p_op(d)];
        let mut mean = DVector::zeros(4);
        for (j, op) in quads.iter().enumerate() {
            mean[j] = self.expect_product(op, &eye).re;
            mean[2 + j] = self.expect_product(&eye, op).re;
        }
        let mut cov = DMatrix::zeros(4, 4);
        for j in 0..4 {
            for k in j..4 {
                let (mode_j, op_j) = (j / 2, &quads[j % 2]);
                let (mode_k, op_k) = (k / 2, &quads[k % 2]);
                let second = if mode_j == mode_k {
                    let sym = (op_j * op_k + op_k * op_j) * c(0.5);
                    if mode_j == 0 {
                        self.expect_product(&sym, &eye).re
                    } else {
                        self.expect_product(&eye, &sym).re
                    }
                } else {
                    // j < k always pairs mode 0 with mode 1 here, and the
                    // operators commute across modes.
                    self.expect_product(op_j, op_k).re
                };
                let centered = second - mean[j] * mean[k];
                cov[(j, k)] = centered;
                cov[(k, j)] = centered;
            }
        }
        (cov, mean)
    }
}

/// Wigner function of a single-mode density matrix at the point `(x, p)`,
/// evaluated through the displaced-parity series
/// `W = (1/2pi) e^{-(x^2+p^2)/2} sum_k (-1)^k [rho_kk L_k(u) + 2 sum_{D>0}
/// sqrt(k!/(k+D)!) Re(rho_{k,k+D} z^D) L_k^D(u)]`
/// with `z = x + i p` and `u = x^2 + p^2`. Generalized Laguerre values come
/// from the usual three-term recurrence in the degree.
pub fn wigner_point_of_fock(rho: &DMatrix<Complex64>, x: f64, p: f64) -> f64 {
    let d = rho.nrows();
    let u = x * x + p * p;
    let z = Complex64::new(x, p);
    let mut series = 0.0;
    let mut z_pow = c(1.0);
    // ratio[k] accumulates sqrt(k! / (k + delta)!) for the current delta.
    let mut ratio: Vec<f64> = vec![1.0; d];
    for delta in 0..d {
        if delta > 0 {
            z_pow *= z;
            for (k, r) in ratio.iter_mut().enumerate() {
                *r /= ((k + delta) as f64).sqrt();
            }
        }
        let alpha = delta as f64;
        // L_k^delta(u) by upward recurrence in k.
        let mut l_prev = 0.0;
        let mut l_curr = 1.0;
        let mut sign = 1.0;
        for k in 0..d - delta {
            let weight = if delta == 0 {
                rho[(k, k)].re
            } else {
                2.0 * ratio[k] * (rho[(k, k + delta)] * z_pow).re
            };
            series += sign * weight * l_curr;
            let kf = k as f64;
            let l_next = ((2.0 * kf + 1.0 + alpha - u) * l_curr - (kf + alpha) * l_prev)
                / (kf + 1.0);
            l_prev = l_curr;
            l_curr = l_next;
            sign = -sign;
        }
    }
    series * (-0.5 * u).exp() / TAU
}

/// Sample the Wigner function of a single-mode density matrix on a grid.
/// The closed-form minimum fields stay empty: the oracle does not know them.
pub fn wigner_of_fock(
    rho: &DMatrix<Complex64>,
    window: WignerWindow,
    nx: usize,
    np: usize,
) -> Result<WignerGrid> {
    if nx < 2 || np < 2 {
        return Err(Error::InvalidInput(format!(
            "grid resolution must be at least 2x2, got {nx}x{np}"
        )));
    }
    if !(window.x_min < window.x_max && window.p_min < window.p_max) {
        return Err(Error::InvalidInput("window bounds must be increasing".into()));
    }
    let mut values = Vec::with_capacity(nx * np);
    for ix in 0..nx {
        let x = window.x_min + (window.x_max - window.x_min) * ix as f64 / (nx - 1) as f64;
        for ip in 0..np {
            let p = window.p_min + (window.p_max - window.p_min) * ip as f64 / (np - 1) as f64;
            values.push(wigner_point_of_fock(rho, x, p));
        }
    }
    Ok(WignerGrid { window, nx, np, values, w_min: None, min_location: None })
}

/// Build the two-mode entangled resource in Fock space: thermal inputs of
/// noise `n`, quadrature squeezing by `s1` (mode 0, x-squeezed ratio `s1`)
/// and `s2` (mode 1, opposite orientation), mixed on a balanced
/// beamsplitter. Matches [`crate::factories::epr_state`] moment for moment.
pub fn epr_fock(
    s1: Squeezing,
    s2: Squeezing,
    n: ThermalNoise,
    config: &OracleConfig,
) -> Result<TwoModeFock> {
    config.validate()?;
    let d = config.cutoff;
    let nbar = (n.value() - 1.0) / 2.0;
    let mut state = TwoModeFock::thermal_pair(d, nbar, nbar)?;
    state.apply_mode_operator(0, &squeeze_unitary(d, s1.ratio().ln() / 2.0))?;
    state.apply_mode_operator(1, &squeeze_unitary(d, -s2.ratio().ln() / 2.0))?;
    state.apply_beamsplitter(FRAC_PI_4);
    state.check_leakage(config.leakage_bound)?;
    Ok(state)
}

/// Everything the oracle reports about one subtraction experiment.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    /// Wigner function of the remote mode after the subtraction.
    pub grid: WignerGrid,
    /// Relative weight of the subtraction event, `tr[b rho b^dag]`; equals
    /// the mean photon number of the tapped mode just before subtraction.
    pub click_weight: f64,
    /// Top-level population right before the subtraction.
    pub leakage: f64,
}

/// Full brute-force pipeline: build the resource, displace the tapped mode
/// by `xi_g`, apply the Gaussian pre-operation `pre_op` (same convention as
/// [`crate::analysis::w_min`]: covariance block transforms as
/// `R^T V_g R`), subtract one photon, trace out the tapped mode, and sample
/// the remote mode's Wigner function.
#[allow(clippy::too_many_arguments)]
pub fn oracle_reduced_wigner(
    s1: Squeezing,
    s2: Squeezing,
    n: ThermalNoise,
    xi_g: &Vector2<f64>,
    pre_op: &Cov2,
    window: WignerWindow,
    nx: usize,
    np: usize,
    config: &OracleConfig,
) -> Result<OracleOutcome> {
    let mut state = epr_fock(s1, s2, n, config)?;
    let d = config.cutoff;
    if xi_g != &Vector2::zeros() {
        let alpha = Complex64::new(xi_g[0] / 2.0, xi_g[1] / 2.0);
        state.apply_mode_operator(1, &displacement_unitary(d, alpha))?;
    }
    if pre_op != &Cov2::identity() {
        state.apply_mode_operator(1, &gaussian_unitary(d, &pre_op.transpose())?)?;
    }
    let leakage = state.check_leakage(config.leakage_bound)?;
    let click_weight = state.subtract_photon(1)?;
    let reduced = state.partial_trace_keep(0);
    let grid = wigner_of_fock(&reduced, window, nx, np)?;
    Ok(OracleOutcome { grid, click_weight, leakage })
}
