//! Decide — and quantify — when photon subtraction in one mode of a
//! multimode Gaussian state produces a negative Wigner function in another
//! mode, remotely.
//!
//! The central objects are [`state::GaussianState`] (covariance matrix plus
//! mean vector), the two-mode marginal [`state::ModePair`] for an ordered
//! pair (f, g), and [`analysis::analyze`], which reports: the conditional
//! covariance of g given f, its symplectic eigenvalue ν, the trace test for
//! negativity with bare subtraction, the optimal local symplectic on g, and
//! the minima of the resulting Wigner functions. The verdicts are linked by
//! an exact equivalence: subtraction in g can produce negativity in f — for
//! some local Gaussian pre-operation — precisely when ν < 1, i.e. when f can
//! steer g.
//!
//! Everything analytic is cross-checked against [`fock`], an independent
//! truncated-Fock-space oracle that builds the same states as density
//! matrices and subtracts a photon by explicit operator algebra.
//!
//! Quadrature conventions, used everywhere without further comment:
//! `[x, p] = 2i`, vacuum covariance = identity, quadratures ordered
//! (x₁, p₁, x₂, p₂, …), and squeezing quoted either as a variance ratio
//! s > 0 or in dB (10·log₁₀ s).

pub mod analysis;
pub mod cli;
pub mod error;
pub mod factories;
pub mod fock;
pub mod state;
pub mod sweep;
pub mod symplectic;
pub mod tol;

// Re-exported so downstream crates (the C ABI in particular) can name the
// matrix types appearing in this crate's public signatures without pinning
// their own copy of the dependency.
pub use nalgebra;
