//! Symplectic linear algebra on quadrature space.
//!
//! Conventions used throughout the crate: a system of `m` bosonic modes has
//! quadratures `r = (x_1, p_1, ..., x_m, p_m)` with `[x, p] = 2i`, so the
//! vacuum covariance matrix is the identity. The symplectic form `O` is the
//! matrix with `[q(f1), q(f2)] = -2i (f1, O f2)` for quadrature combinations
//! `q(f) = (f, r)`; per mode it is the 2x2 block `[[0, -1], [1, 0]]`, which
//! maps the x-axis onto the p-axis (`O e_x = e_p`).
//!
//! Two index orderings appear at API boundaries: `Interleaved`
//! (x1, p1, x2, p2, ...), the canonical ordering everywhere in this crate,
//! and `Blockwise` (x1..xm, p1..pm), common in the cluster-state literature.
//! [`reorder_matrix`] and [`reorder_vector`] convert between them.

use nalgebra::{DMatrix, DVector, Matrix2};

use crate::error::{Error, Result};
use crate::tol;

/// Layout of the quadrature index space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureOrdering {
    /// x1, p1, x2, p2, ...  (canonical inside this crate)
    Interleaved,
    /// x1, ..., xm, p1, ..., pm
    Blockwise,
}

/// 2x2 real symmetric covariance block of a single effective mode.
pub type Cov2 = Matrix2<f64>;

/// The symplectic form on `modes` modes in the given ordering.
///
/// Satisfies `O^2 = -I` and `O^T = -O` exactly (entries are 0 and +-1).
pub fn omega(modes: usize, ordering: QuadratureOrdering) -> DMatrix<f64> {
    let dim = 2 * modes;
    let mut o = DMatrix::zeros(dim, dim);
    for j in 0..modes {
        let (x, p) = match ordering {
            QuadratureOrdering::Interleaved => (2 * j, 2 * j + 1),
            QuadratureOrdering::Blockwise => (j, modes + j),
        };
        o[(x, p)] = -1.0;
        o[(p, x)] = 1.0;
    }
    o
}

/// Max-norm defect `max |M^T O M - O|` of a candidate symplectic matrix.
pub fn symplectic_defect(m: &DMatrix<f64>, ordering: QuadratureOrdering) -> Result<f64> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare(rows, cols));
    }
    if rows % 2 != 0 {
        return Err(Error::OddDimension(rows));
    }
    let o = omega(rows / 2, ordering);
    let defect = m.transpose() * &o * m - o;
    Ok(defect.amax())
}

/// Whether `M` preserves the symplectic form to within `tolerance` in max norm.
pub fn is_symplectic(m: &DMatrix<f64>, ordering: QuadratureOrdering, tolerance: f64) -> Result<bool> {
    Ok(symplectic_defect(m, ordering)? <= tolerance)
}

/// Result of the 2x2 Williamson decomposition `V = nu S^T S`.
///
/// `nu` is the symplectic eigenvalue and `S` is the symplectic factor, fixed
/// to the symmetric positive-definite square root of `V / nu` (so the gauge
/// freedom `S -> O S` with `O` orthogonal symplectic is removed). `S` has
/// unit determinant and `tr[S^T S] >= 2` with equality iff `S = I`.
#[derive(Debug, Clone, Copy)]
pub struct WilliamsonFactors {
    pub nu: f64,
    pub s: Cov2,
}

/// Symmetry defect `max |V - V^T|` of a square matrix.
fn symmetry_defect_2(v: &Cov2) -> f64 {
    (v[(0, 1)] - v[(1, 0)]).abs()
}

/// Eigenvalues of a symmetric 2x2 matrix, ascending. Closed form.
pub fn sym_eigenvalues_2x2(v: &Cov2) -> (f64, f64) {
    let half_tr = 0.5 * (v[(0, 0)] + v[(1, 1)]);
    let det = v[(0, 0)] * v[(1, 1)] - v[(0, 1)] * v[(1, 0)];
    // Discriminant of the characteristic polynomial; clamp tiny negative
    // values that arise from rounding when the eigenvalues coincide.
    let disc = (half_tr * half_tr - det).max(0.0).sqrt();
    (half_tr - disc, half_tr + disc)
}

/// Inverse of a symmetric positive-definite 2x2 block, rejecting inputs whose
/// condition number exceeds [`tol::CONDITION_CAP`].
pub fn invert_spd_2x2(v: &Cov2) -> Result<Cov2> {
    let defect = symmetry_defect_2(v);
    if defect > tol::SYMMETRY_DEFECT {
        return Err(Error::NotSymmetric { defect });
    }
    let (lo, hi) = sym_eigenvalues_2x2(v);
    if lo <= 0.0 {
        return Err(Error::NotPositiveDefinite { min_eig: lo });
    }
    let cond = hi / lo;
    if cond > tol::CONDITION_CAP {
        return Err(Error::IllConditioned { cond, cap: tol::CONDITION_CAP });
    }
    let det = v[(0, 0)] * v[(1, 1)] - v[(0, 1)] * v[(1, 0)];
    Ok(Cov2::new(v[(1, 1)], -v[(0, 1)], -v[(1, 0)], v[(0, 0)]) / det)
}

/// Conditional covariance of mode g given a homodyne-complete measurement of
/// mode f: the Schur complement `V_g - V_fg^T V_f^{-1} V_fg`.
///
/// For any physical joint 4x4 covariance the result is symmetric positive
/// semidefinite; it is returned exactly symmetrized to guard against
/// rounding.
pub fn conditional_covariance(v_f: &Cov2, v_g: &Cov2, v_fg: &Cov2) -> Result<Cov2> {
    let v_f_inv = invert_spd_2x2(v_f)?;
    let raw = v_g - v_fg.transpose() * v_f_inv * v_fg;
    Ok(0.5 * (raw + raw.transpose()))
}

/// Williamson decomposition of a 2x2 covariance block: `V = nu S^T S` with
/// `nu = sqrt(det V)` and `S` the symmetric positive-definite square root of
/// `V / nu`.
pub fn williamson_2x2(v: &Cov2) -> Result<WilliamsonFactors> {
    let defect = symmetry_defect_2(v);
    if defect > tol::SYMMETRY_DEFECT {
        return Err(Error::NotSymmetric { defect });
    }
    let (lo, _hi) = sym_eigenvalues_2x2(v);
    if lo <= 0.0 {
        return Err(Error::NotPositiveDefinite { min_eig: lo });
    }
    let det = v[(0, 0)] * v[(1, 1)] - v[(0, 1)] * v[(1, 0)];
    let nu = det.sqrt();
    // Square root of the unit-determinant matrix W = V/nu via the 2x2
    // closed form sqrt(W) = (W + sqrt(det W) I) / sqrt(tr W + 2 sqrt(det W));
    // here det W = 1 exactly by construction.
    let w = v / nu;
    let s = (w + Cov2::identity()) / (w.trace() + 2.0).sqrt();
    Ok(WilliamsonFactors { nu, s })
}

/// Permutation taking a vector written in `from` ordering into `to` ordering:
/// `out[i] = in[source[i]]`.
fn reorder_map(modes: usize, from: QuadratureOrdering, to: QuadratureOrdering) -> Vec<usize> {
    let dim = 2 * modes;
    let mut source = vec![0usize; dim];
    for j in 0..modes {
        for q in 0..2 {
            let idx_from = match from {
                QuadratureOrdering::Interleaved => 2 * j + q,
                QuadratureOrdering::Blockwise => q * modes + j,
            };
            let idx_to = match to {
                QuadratureOrdering::Interleaved => 2 * j + q,
                QuadratureOrdering::Blockwise => q * modes + j,
            };
            source[idx_to] = idx_from;
        }
    }
    source
}

/// Re-express a covariance (or any quadrature-indexed) matrix in a different
/// quadrature ordering. Converting to the same ordering is the identity, and
/// a round trip `from -> to -> from` restores the input exactly.
pub fn reorder_matrix(
    m: &DMatrix<f64>,
    from: QuadratureOrdering,
    to: QuadratureOrdering,
) -> Result<DMatrix<f64>> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare(rows, cols));
    }
    if rows % 2 != 0 {
        return Err(Error::OddDimension(rows));
    }
    let map = reorder_map(rows / 2, from, to);
    let mut out = DMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            out[(r, c)] = m[(map[r], map[c])];
        }
    }
    Ok(out)
}

/// Re-express a quadrature-indexed vector in a different ordering.
pub fn reorder_vector(
    v: &DVector<f64>,
    from: QuadratureOrdering,
    to: QuadratureOrdering,
) -> Result<DVector<f64>> {
    let dim = v.len();
    if dim % 2 != 0 {
        return Err(Error::OddDimension(dim));
    }
    let map = reorder_map(dim / 2, from, to);
    Ok(DVector::from_fn(dim, |i, _| v[map[i]]))
}
