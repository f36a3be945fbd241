//! Multimode Gaussian states: covariance matrix, mean vector, and the local
//! operations needed by the photon-subtraction analysis.
//!
//! A state of `m` modes is `(V, xi)` with `V` a `2m x 2m` real symmetric
//! covariance matrix in interleaved ordering and `xi` the mean quadrature
//! vector. Physicality is the uncertainty condition `V + iO >= 0`
//! (equivalently all symplectic eigenvalues `>= 1`); construction does not
//! enforce it, [`GaussianState::validate`] diagnoses it.

use nalgebra::{DMatrix, DVector, Vector2};

use crate::error::{Error, Result};
use crate::symplectic::{omega, Cov2, QuadratureOrdering};
use crate::tol;

/// A Gaussian state: covariance matrix and mean vector, interleaved ordering.
#[derive(Debug, Clone)]
pub struct GaussianState {
    cov: DMatrix<f64>,
    mean: DVector<f64>,
}

/// Diagnostics reported by [`GaussianState::validate`].
#[derive(Debug, Clone, Copy)]
pub struct StateDiagnostics {
    /// Smallest eigenvalue of the Hermitian matrix `V + iO`. Physical states
    /// have this `>= 0` up to rounding; pure states touch zero.
    pub min_eig_uncertainty: f64,
    /// Smallest symplectic eigenvalue of `V` (unit for pure modes).
    pub min_symplectic_eigenvalue: f64,
    /// Max-norm symmetry defect `max |V - V^T|`.
    pub symmetry_defect: f64,
    /// True iff the uncertainty eigenvalue clears `-`[`tol::PHYSICALITY`].
    pub physical: bool,
}

/// A normalized quadrature direction defining one effective mode.
///
/// The quadrature carried by `f` is `q(f) = (f, r)`; its canonical conjugate
/// is `q(O f)`. Canonical mode `j` corresponds to the basis vector along
/// `x_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeVector(DVector<f64>);

impl ModeVector {
    /// Wrap a quadrature direction; must have even length and unit norm.
    pub fn new(v: DVector<f64>) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(Error::OddDimension(v.len()));
        }
        let norm = v.norm();
        if (norm - 1.0).abs() > tol::MODE_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(ModeVector(v))
    }

    /// The x-quadrature direction of canonical mode `index` (0-based).
    pub fn canonical(modes: usize, index: usize) -> Result<Self> {
        if index >= modes {
            return Err(Error::ModeIndex { index, modes });
        }
        let mut v = DVector::zeros(2 * modes);
        v[2 * index] = 1.0;
        Ok(ModeVector(v))
    }

    pub fn as_vector(&self) -> &DVector<f64> {
        &self.0
    }

    fn modes(&self) -> usize {
        self.0.len() / 2
    }
}

/// Two-mode restriction of a Gaussian state to a subtraction mode g and a
/// remote mode f: the blocks of the joint 4x4 covariance matrix and the two
/// mean vectors.
///
/// If the parent state is physical the assembled 4x4 matrix
/// `[[V_f, V_fg], [V_fg^T, V_g]]` is again a physical two-mode covariance.
#[derive(Debug, Clone, Copy)]
pub struct ModePair {
    pub v_f: Cov2,
    pub v_g: Cov2,
    /// Cross block in (f, g) order: rows index f quadratures, columns g.
    pub v_fg: Cov2,
    pub xi_f: Vector2<f64>,
    pub xi_g: Vector2<f64>,
}

impl ModePair {
    /// The joint 4x4 covariance matrix in interleaved (f, g) ordering.
    pub fn assemble(&self) -> DMatrix<f64> {
        let mut v = DMatrix::zeros(4, 4);
        for r in 0..2 {
            for c in 0..2 {
                v[(r, c)] = self.v_f[(r, c)];
                v[(r, c + 2)] = self.v_fg[(r, c)];
                v[(r + 2, c)] = self.v_fg[(c, r)];
                v[(r + 2, c + 2)] = self.v_g[(r, c)];
            }
        }
        v
    }

    /// Conditional covariance of g given f (Schur complement of `V_f`).
    pub fn conditional_covariance(&self) -> Result<Cov2> {
        crate::symplectic::conditional_covariance(&self.v_f, &self.v_g, &self.v_fg)
    }
}

/// Symmetrized inner product `f^T V g` used when reading off pair blocks.
fn quad_form(v: &DMatrix<f64>, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let va = v * b;
    let raw = a.dot(&va);
    let vb = v * a;
    0.5 * (raw + b.dot(&vb))
}

impl GaussianState {
    /// Build a state from covariance and mean. Checks shape and symmetry,
    /// not physicality.
    pub fn from_parts(cov: DMatrix<f64>, mean: DVector<f64>) -> Result<Self> {
        let (rows, cols) = cov.shape();
        if rows != cols {
            return Err(Error::NotSquare(rows, cols));
        }
        if rows % 2 != 0 {
            return Err(Error::OddDimension(rows));
        }
        if mean.len() != rows {
            return Err(Error::DimensionMismatch { expected: rows, actual: mean.len() });
        }
        let defect = (&cov - cov.transpose()).amax();
        if defect > tol::SYMMETRY_DEFECT {
            return Err(Error::NotSymmetric { defect });
        }
        Ok(GaussianState { cov, mean })
    }

    /// The m-mode vacuum: identity covariance, zero mean.
    pub fn vacuum(modes: usize) -> Self {
        GaussianState {
            cov: DMatrix::identity(2 * modes, 2 * modes),
            mean: DVector::zeros(2 * modes),
        }
    }

    pub fn modes(&self) -> usize {
        self.cov.nrows() / 2
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    /// Physicality diagnostics: smallest eigenvalue of `V + iO`, smallest
    /// symplectic eigenvalue, and the symmetry defect.
    pub fn validate(&self) -> StateDiagnostics {
        let dim = self.cov.nrows();
        let o = omega(self.modes(), QuadratureOrdering::Interleaved);
        // Eigenvalues of the Hermitian matrix V + iO via the real embedding
        // [[V, -O], [O, V]], which has the same spectrum (each value twice).
        let mut embedded = DMatrix::zeros(2 * dim, 2 * dim);
        embedded.view_mut((0, 0), (dim, dim)).copy_from(&self.cov);
        embedded.view_mut((dim, dim), (dim, dim)).copy_from(&self.cov);
        embedded.view_mut((0, dim), (dim, dim)).copy_from(&(-&o));
        embedded.view_mut((dim, 0), (dim, dim)).copy_from(&o);
        let eigs = embedded.symmetric_eigenvalues();
        let min_eig_uncertainty = eigs.iter().cloned().fold(f64::INFINITY, f64::min);

        // Symplectic eigenvalues are the magnitudes of the (purely
        // imaginary) eigenvalues of O V, which come in +- pairs.
        let spectrum = (&o * &self.cov).complex_eigenvalues();
        let min_symplectic_eigenvalue =
            spectrum.iter().map(|l| l.norm()).fold(f64::INFINITY, f64::min);

        let symmetry_defect = (&self.cov - self.cov.transpose()).amax();
        StateDiagnostics {
            min_eig_uncertainty,
            min_symplectic_eigenvalue,
            symmetry_defect,
            physical: min_eig_uncertainty >= -tol::PHYSICALITY,
        }
    }

    /// Restrict the state to the two effective modes `f` and `g`.
    ///
    /// The modes must be unit vectors of the right dimension and must not
    /// overlap: both `(f, g)` and `(f, O g)` must vanish, which makes
    /// `(q(f), q(O f))` and `(q(g), q(O g))` a pair of independent canonical
    /// mode coordinates.
    pub fn extract_pair(&self, f: &ModeVector, g: &ModeVector) -> Result<ModePair> {
        if f.modes() != self.modes() || g.modes() != self.modes() {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.modes(),
                actual: 2 * f.modes().max(g.modes()),
            });
        }
        let o = omega(self.modes(), QuadratureOrdering::Interleaved);
        let fv = f.as_vector();
        let gv = g.as_vector();
        let overlap = fv.dot(gv).abs();
        let symplectic_overlap = fv.dot(&(&o * gv)).abs();
        if overlap > tol::MODE_OVERLAP || symplectic_overlap > tol::MODE_OVERLAP {
            return Err(Error::ModeOverlap { overlap, symplectic_overlap });
        }
        let of = &o * fv;
        let og = &o * gv;
        let dirs_f = [fv.clone(), of];
        let dirs_g = [gv.clone(), og];
        let mut v_f = Cov2::zeros();
        let mut v_g = Cov2::zeros();
        let mut v_fg = Cov2::zeros();
        for r in 0..2 {
            for c in 0..2 {
                v_f[(r, c)] = quad_form(&self.cov, &dirs_f[r], &dirs_f[c]);
                v_g[(r, c)] = quad_form(&self.cov, &dirs_g[r], &dirs_g[c]);
                v_fg[(r, c)] = quad_form(&self.cov, &dirs_f[r], &dirs_g[c]);
            }
        }
        let xi_f = Vector2::new(self.mean.dot(&dirs_f[0]), self.mean.dot(&dirs_f[1]));
        let xi_g = Vector2::new(self.mean.dot(&dirs_g[0]), self.mean.dot(&dirs_g[1]));
        Ok(ModePair { v_f, v_g, v_fg, xi_f, xi_g })
    }

    /// Restrict to two canonical modes by index.
    pub fn extract_canonical_pair(&self, f_index: usize, g_index: usize) -> Result<ModePair> {
        if f_index == g_index {
            return Err(Error::ModeOverlap { overlap: 1.0, symplectic_overlap: 0.0 });
        }
        let f = ModeVector::canonical(self.modes(), f_index)?;
        let g = ModeVector::canonical(self.modes(), g_index)?;
        self.extract_pair(&f, &g)
    }

    /// Apply a single-mode symplectic matrix `R` to mode `k`: the diagonal
    /// block transforms as `V_kk -> R^T V_kk R`, cross blocks as
    /// `V_jk -> V_jk R`, and the mean as `xi_k -> R^T xi_k`.
    pub fn apply_local_symplectic(&self, k: usize, r: &Cov2) -> Result<GaussianState> {
        if k >= self.modes() {
            return Err(Error::ModeIndex { index: k, modes: self.modes() });
        }
        // A 2x2 matrix is symplectic iff det = 1.
        let det = r[(0, 0)] * r[(1, 1)] - r[(0, 1)] * r[(1, 0)];
        if (det - 1.0).abs() > tol::SYMPLECTIC_DEFECT {
            return Err(Error::NotSymplectic { defect: (det - 1.0).abs() });
        }
        let dim = 2 * self.modes();
        let mut t = DMatrix::<f64>::identity(dim, dim);
        for a in 0..2 {
            for b in 0..2 {
                t[(2 * k + a, 2 * k + b)] = r[(b, a)]; // R^T on mode k
            }
        }
        let cov = &t * &self.cov * t.transpose();
        let mean = &t * &self.mean;
        Ok(GaussianState { cov: 0.5 * (&cov + cov.transpose()), mean })
    }

    /// Shift the mean by `delta`; the covariance is unchanged.
    pub fn displace(&self, delta: &DVector<f64>) -> Result<GaussianState> {
        if delta.len() != 2 * self.modes() {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.modes(),
                actual: delta.len(),
            });
        }
        Ok(GaussianState { cov: self.cov.clone(), mean: &self.mean + delta })
    }

    /// Mix modes `j` and `k` on a beamsplitter of transmittance `t`.
    ///
    /// The mode-mixing matrix is `[[c, s], [-s, c]]` with `c = sqrt(t)`,
    /// acting identically on the x and p planes. Applying the same
    /// transmittance with the mode arguments swapped undoes the operation.
    pub fn beamsplitter(&self, j: usize, k: usize, t: f64) -> Result<GaussianState> {
        let modes = self.modes();
        if j >= modes {
            return Err(Error::ModeIndex { index: j, modes });
        }
        if k >= modes {
            return Err(Error::ModeIndex { index: k, modes });
        }
        if j == k {
            return Err(Error::ModeOverlap { overlap: 1.0, symplectic_overlap: 0.0 });
        }
        if !(0.0..=1.0).contains(&t) || t.is_nan() {
            return Err(Error::InvalidTransmittance(t));
        }
        let c = t.sqrt();
        let s = (1.0 - t).sqrt();
        let dim = 2 * modes;
        let mut m = DMatrix::<f64>::identity(dim, dim);
        for q in 0..2 {
            let (a, b) = (2 * j + q, 2 * k + q);
            m[(a, a)] = c;
            m[(a, b)] = s;
            m[(b, a)] = -s;
            m[(b, b)] = c;
        }
        let cov = &m * &self.cov * m.transpose();
        let mean = &m * &self.mean;
        Ok(GaussianState { cov: 0.5 * (&cov + cov.transpose()), mean })
    }
}

/// Purity factor `1 / sqrt(det V_f)` of a single-mode block; lies in (0, 1]
/// for physical marginals, with 1 exactly on pure states.
pub fn purity_factor(v_f: &Cov2) -> Result<f64> {
    let defect = (v_f[(0, 1)] - v_f[(1, 0)]).abs();
    if defect > tol::SYMMETRY_DEFECT {
        return Err(Error::NotSymmetric { defect });
    }
    let det = v_f[(0, 0)] * v_f[(1, 1)] - v_f[(0, 1)] * v_f[(1, 0)];
    if det <= 0.0 || v_f[(0, 0)] <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            min_eig: crate::symplectic::sym_eigenvalues_2x2(v_f).0,
        });
    }
    Ok(1.0 / det.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    fn random_symmetric(dim: usize, rng: &mut impl Rng) -> DMatrix<f64> {
        let a = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
        0.5 * (&a + a.transpose())
    }

    #[test]
    fn vacuum_is_physical_and_saturates_uncertainty() {
        let d = GaussianState::vacuum(3).validate();
        assert!(d.physical);
        assert_relative_eq!(d.min_eig_uncertainty, 0.0, epsilon = 1e-12);
        assert_relative_eq!(d.min_symplectic_eigenvalue, 1.0, max_relative = 1e-12);
        assert_eq!(d.symmetry_defect, 0.0);
    }

    #[test]
    fn thermal_state_is_strictly_physical() {
        let v = 2.0 * DMatrix::<f64>::identity(2, 2);
        let state = GaussianState::from_parts(v, DVector::zeros(2)).unwrap();
        let d = state.validate();
        assert!(d.physical);
        assert_relative_eq!(d.min_eig_uncertainty, 1.0, max_relative = 1e-12);
        assert_relative_eq!(d.min_symplectic_eigenvalue, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn squeezed_below_vacuum_in_both_quadratures_is_unphysical() {
        let v = DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 0.5]));
        let state = GaussianState::from_parts(v, DVector::zeros(2)).unwrap();
        let d = state.validate();
        assert!(!d.physical);
        assert_relative_eq!(d.min_eig_uncertainty, -0.5, max_relative = 1e-12);
        assert_relative_eq!(d.min_symplectic_eigenvalue, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn from_parts_rejects_malformed_inputs() {
        let asym = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, -0.5, 1.0]);
        assert!(matches!(
            GaussianState::from_parts(asym, DVector::zeros(2)),
            Err(Error::NotSymmetric { .. })
        ));
        let odd = DMatrix::identity(3, 3);
        assert!(matches!(
            GaussianState::from_parts(odd, DVector::zeros(3)),
            Err(Error::OddDimension(3))
        ));
        let wrong_mean = GaussianState::from_parts(DMatrix::<f64>::identity(4, 4), DVector::zeros(2));
        assert!(matches!(wrong_mean, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn canonical_pair_extraction_reads_off_blocks() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let dim = 6;
        let v = random_symmetric(dim, &mut rng) + 5.0 * DMatrix::<f64>::identity(dim, dim);
        let mean = DVector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
        let state = GaussianState::from_parts(v.clone(), mean.clone()).unwrap();
        let pair = state.extract_canonical_pair(2, 0).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(pair.v_f[(a, b)], v[(4 + a, 4 + b)]);
                assert_eq!(pair.v_g[(a, b)], v[(a, b)]);
                assert_eq!(pair.v_fg[(a, b)], v[(4 + a, b)]);
            }
        }
        assert_eq!(pair.xi_f, Vector2::new(mean[4], mean[5]));
        assert_eq!(pair.xi_g, Vector2::new(mean[0], mean[1]));
    }

    #[test]
    fn rotated_mode_pair_of_vacuum_is_vacuum() {
        let state = GaussianState::vacuum(2);
        let inv = 0.5f64.sqrt();
        let f = ModeVector::new(DVector::from_vec(vec![inv, 0.0, inv, 0.0])).unwrap();
        let g = ModeVector::new(DVector::from_vec(vec![inv, 0.0, -inv, 0.0])).unwrap();
        let pair = state.extract_pair(&f, &g).unwrap();
        assert_relative_eq!((pair.v_f - Cov2::identity()).amax(), 0.0, epsilon = 1e-14);
        assert_relative_eq!((pair.v_g - Cov2::identity()).amax(), 0.0, epsilon = 1e-14);
        assert_relative_eq!(pair.v_fg.amax(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn overlapping_modes_are_rejected() {
        let state = GaussianState::vacuum(2);
        let f = ModeVector::canonical(2, 0).unwrap();
        assert!(matches!(state.extract_pair(&f, &f), Err(Error::ModeOverlap { .. })));
        // g = O f overlaps f symplectically even though (f, g) = 0.
        let g = ModeVector::new(DVector::from_vec(vec![0.0, 1.0, 0.0, 0.0])).unwrap();
        assert!(matches!(state.extract_pair(&f, &g), Err(Error::ModeOverlap { .. })));
        assert!(matches!(state.extract_canonical_pair(1, 1), Err(Error::ModeOverlap { .. })));
    }

    #[test]
    fn mode_vector_constructors_enforce_norm_and_range() {
        assert!(matches!(
            ModeVector::new(DVector::from_vec(vec![1.0, 1.0])),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            ModeVector::new(DVector::from_vec(vec![1.0, 0.0, 0.0])),
            Err(Error::OddDimension(3))
        ));
        assert!(matches!(ModeVector::canonical(2, 2), Err(Error::ModeIndex { .. })));
    }

    #[test]
    fn physical_parent_yields_physical_pair() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            // Random physical state: start from a thermal spectrum
            // diag(nu_j, nu_j) and conjugate by local squeezes and
            // beamsplitters, which preserves physicality.
            let mut d = DMatrix::zeros(6, 6);
            for j in 0..3 {
                let nu = rng.gen_range(1.0..2.5);
                d[(2 * j, 2 * j)] = nu;
                d[(2 * j + 1, 2 * j + 1)] = nu;
            }
            let mut state = GaussianState::from_parts(d, DVector::zeros(6)).unwrap();
            for _ in 0..4 {
                let k = rng.gen_range(0..3);
                let r = rng.gen_range(-0.7..0.7f64);
                let sq = Cov2::new(r.exp(), 0.0, 0.0, (-r).exp());
                state = state.apply_local_symplectic(k, &sq).unwrap();
                let (a, b) = (rng.gen_range(0..3), rng.gen_range(0..3));
                if a != b {
                    state = state.beamsplitter(a, b, rng.gen_range(0.1..0.9)).unwrap();
                }
            }
            assert!(state.validate().physical);
            let pair = state.extract_canonical_pair(0, 2).unwrap();
            let joint = GaussianState::from_parts(pair.assemble(), DVector::zeros(4)).unwrap();
            assert!(joint.validate().physical);
        }
    }

    #[test]
    fn local_symplectic_transforms_blocks_as_documented() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let v = random_symmetric(4, &mut rng) + 4.0 * DMatrix::<f64>::identity(4, 4);
        let mean = DVector::from_fn(4, |_, _| rng.gen_range(-1.0..1.0));
        let state = GaussianState::from_parts(v.clone(), mean.clone()).unwrap();
        let r = Cov2::new(1.3, 0.2, 0.4, (1.0 + 0.2 * 0.4) / 1.3); // det = 1
        let out = state.apply_local_symplectic(1, &r).unwrap();
        let pair = state.extract_canonical_pair(0, 1).unwrap();
        let tpair = out.extract_canonical_pair(0, 1).unwrap();
        assert_relative_eq!((tpair.v_g - r.transpose() * pair.v_g * r).amax(), 0.0, epsilon = 1e-12);
        assert_relative_eq!((tpair.v_fg - pair.v_fg * r).amax(), 0.0, epsilon = 1e-12);
        assert_relative_eq!((tpair.xi_g - r.transpose() * pair.xi_g).amax(), 0.0, epsilon = 1e-12);
        assert_relative_eq!((tpair.v_f - pair.v_f).amax(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn local_symplectic_rejects_non_unit_determinant() {
        let state = GaussianState::vacuum(1);
        let bad = Cov2::new(2.0, 0.0, 0.0, 2.0);
        assert!(matches!(
            state.apply_local_symplectic(0, &bad),
            Err(Error::NotSymplectic { .. })
        ));
    }

    #[test]
    fn displacement_shifts_mean_only() {
        let state = GaussianState::vacuum(2);
        let delta = DVector::from_vec(vec![1.0, -2.0, 0.5, 0.0]);
        let out = state.displace(&delta).unwrap();
        assert_eq!(out.mean(), &delta);
        assert_eq!(out.cov(), state.cov());
        assert!(matches!(
            state.displace(&DVector::zeros(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn beamsplitter_conserves_energy_and_inverts() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let v = random_symmetric(4, &mut rng) + 4.0 * DMatrix::<f64>::identity(4, 4);
        let mean = DVector::from_fn(4, |_, _| rng.gen_range(-1.0..1.0));
        let state = GaussianState::from_parts(v, mean).unwrap();
        let mixed = state.beamsplitter(0, 1, 0.3).unwrap();
        assert_relative_eq!(mixed.cov().trace(), state.cov().trace(), max_relative = 1e-13);
        assert_relative_eq!(mixed.mean().norm(), state.mean().norm(), max_relative = 1e-13);
        // Swapping the mode arguments applies the inverse rotation.
        let back = mixed.beamsplitter(1, 0, 0.3).unwrap();
        assert_relative_eq!((back.cov() - state.cov()).amax(), 0.0, epsilon = 1e-10);
        assert_relative_eq!((back.mean() - state.mean()).amax(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn beamsplitter_rejects_bad_arguments() {
        let state = GaussianState::vacuum(2);
        assert!(matches!(state.beamsplitter(0, 1, 1.5), Err(Error::InvalidTransmittance(_))));
        assert!(matches!(state.beamsplitter(0, 1, -0.1), Err(Error::InvalidTransmittance(_))));
        assert!(matches!(state.beamsplitter(0, 0, 0.5), Err(Error::ModeOverlap { .. })));
        assert!(matches!(state.beamsplitter(0, 2, 0.5), Err(Error::ModeIndex { .. })));
    }

    #[test]
    fn purity_factor_matches_known_values() {
        assert_relative_eq!(purity_factor(&Cov2::identity()).unwrap(), 1.0);
        assert_relative_eq!(
            purity_factor(&(2.0 * Cov2::identity())).unwrap(),
            0.5,
            max_relative = 1e-15
        );
        // Pure squeezed mode: det = 1.
        assert_relative_eq!(
            purity_factor(&Cov2::new(4.0, 0.0, 0.0, 0.25)).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert!(matches!(
            purity_factor(&Cov2::new(1.0, 2.0, 2.0, 1.0)),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }
}
