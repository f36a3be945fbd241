//! Shared generators for the randomized test suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use steerwig::nalgebra::{DMatrix, DVector, Matrix2};
use steerwig::state::GaussianState;

pub fn rotation(theta: f64) -> Matrix2<f64> {
    Matrix2::new(theta.cos(), -theta.sin(), theta.sin(), theta.cos())
}

/// Random single-mode symplectic: rotation · squeeze · rotation, covering
/// all of SL(2, R) with squeeze factors up to e^0.8 ≈ 2.2.
pub fn random_symplectic(rng: &mut ChaCha8Rng) -> Matrix2<f64> {
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    let z: f64 = rng.gen_range(-0.8..0.8f64).exp();
    rotation(theta) * Matrix2::new(z, 0.0, 0.0, 1.0 / z) * rotation(phi)
}

/// Random mixed two-mode Gaussian state with zero mean: a random symplectic
/// circuit (local layers interleaved with beamsplitters) applied to a random
/// thermal spectrum. Spectra stay ≥ 1.05 so the states remain clearly away
/// from purity and the subtraction mode always carries photons.
pub fn random_two_mode_state(rng: &mut ChaCha8Rng) -> GaussianState {
    let nu1 = rng.gen_range(1.05..3.0);
    let nu2 = rng.gen_range(1.05..3.0);
    let cov = DMatrix::from_diagonal(&DVector::from_vec(vec![nu1, nu1, nu2, nu2]));
    let mut state = GaussianState::from_parts(cov, DVector::zeros(4)).unwrap();
    for _ in 0..2 {
        state = state.apply_local_symplectic(0, &random_symplectic(rng)).unwrap();
        state = state.apply_local_symplectic(1, &random_symplectic(rng)).unwrap();
        state = state.beamsplitter(0, 1, rng.gen_range(0.05..0.95)).unwrap();
    }
    state
}
