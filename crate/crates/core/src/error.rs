//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`]. Domain errors
//! (bad parameters, unphysical inputs, singular matrices) are kept separate
//! from I/O and parse errors so the command-line layer can map them onto
//! distinct process exit codes.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix dimension {0} is odd; quadrature spaces have even dimension")]
    OddDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("mode index {index} out of range for {modes} modes")]
    ModeIndex { index: usize, modes: usize },

    #[error("mode vector has norm {norm}; expected unit norm")]
    NotNormalized { norm: f64 },

    #[error("mode vectors overlap: |(f,g)| = {overlap:.3e}, |(f,Og)| = {symplectic_overlap:.3e}")]
    ModeOverlap { overlap: f64, symplectic_overlap: f64 },

    #[error("matrix is not symmetric: max |V - V^T| = {defect:.3e}")]
    NotSymmetric { defect: f64 },

    #[error("matrix is not positive definite: min eigenvalue {min_eig:.3e}")]
    NotPositiveDefinite { min_eig: f64 },

    #[error("marginal block is ill-conditioned: condition number {cond:.3e} exceeds cap {cap:.1e}")]
    IllConditioned { cond: f64, cap: f64 },

    #[error("matrix is singular and cannot be inverted")]
    Singular,

    #[error("matrix is not symplectic: max |M^T O M - O| = {defect:.3e}")]
    NotSymplectic { defect: f64 },

    #[error("covariance matrix is unphysical: min eigenvalue of V + iO is {min_eig:.3e}")]
    Unphysical { min_eig: f64 },

    #[error("no photon to subtract: mode mean photon number is {mean_photons:.3e}")]
    NoPhotonToSubtract { mean_photons: f64 },

    #[error("minimum location is undefined: cross-covariance block is singular while the subtraction mode is displaced")]
    UndefinedMinimumLocation,

    #[error("squeezing ratio must be positive and finite, got {0}")]
    InvalidSqueezing(f64),

    #[error("thermal noise factor must satisfy n >= 1, got {0}")]
    InvalidNoise(f64),

    #[error("beamsplitter transmittance must lie in [0, 1], got {0}")]
    InvalidTransmittance(f64),

    #[error("graph line {line}: {reason}")]
    GraphParse { line: usize, reason: String },

    #[error("graph line {line}: self-loop on vertex {vertex} is not allowed")]
    SelfLoop { line: usize, vertex: usize },

    #[error("Fock cutoff {0} is too small; need at least 2 levels")]
    CutoffTooSmall(usize),

    #[error("truncation leakage {leakage:.3e} exceeds bound {bound:.1e}; raise the Fock cutoff")]
    TruncationLeakage { leakage: f64, bound: f64 },

    #[error("state has {actual} modes; this operation needs {expected}")]
    WrongModeCount { expected: usize, actual: usize },

    #[error("sweep axis `{axis}` is invalid: {reason}")]
    InvalidAxis { axis: String, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by invalid parameters or unphysical inputs,
    /// as opposed to I/O failures or verification mismatches.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::Io(_) | Error::Json(_) | Error::VerificationFailed(_)
        )
    }
}
