//! Numerical tolerances used across the crate.
//!
//! Each constant is named for the check it guards and sized for double
//! precision arithmetic on the matrix dimensions this crate works with
//! (2x2 blocks up to a few dozen quadratures). Keeping them in one place
//! makes the tolerance policy auditable instead of scattering magic
//! numbers through the code.

/// Max-norm defect allowed when testing whether a matrix is symplectic.
/// Products of a handful of well-scaled factors stay far below this.
pub const SYMPLECTIC_DEFECT: f64 = 1e-10;

/// Floor for eigenvalues of V + iO when deciding physicality. States built
/// from exact factories sit at zero up to rounding; 1e-9 absorbs the
/// rounding of repeated conjugations without admitting genuine violations.
pub const PHYSICALITY: f64 = 1e-9;

/// Allowed deviation from unit norm for mode vectors.
pub const MODE_NORM: f64 = 1e-10;

/// Allowed residual overlap between the subtraction mode and the remote
/// mode, in both the ordinary and the symplectic inner product.
pub const MODE_OVERLAP: f64 = 1e-10;

/// Condition-number cap for marginal blocks that must be inverted.
pub const CONDITION_CAP: f64 = 1e12;

/// Symmetry defect allowed in covariance matrices, max |V - V^T|.
pub const SYMMETRY_DEFECT: f64 = 1e-9;

/// Band around decision boundaries inside which verdict booleans are
/// flagged as marginal: strict inequalities this close to zero carry no
/// physical meaning in double precision.
pub const BOUNDARY_BAND: f64 = 1e-12;

/// Minimum mean photon number in the subtraction mode; below this the
/// subtracted state is undefined (nothing to subtract).
pub const NO_PHOTON: f64 = 1e-12;

/// Default bound on the population of the top Fock level; above this the
/// truncated description is flagged as having leaked.
pub const LEAKAGE_BOUND: f64 = 1e-6;
