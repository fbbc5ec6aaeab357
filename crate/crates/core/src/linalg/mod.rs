//! Dense eigensolvers for small matrices.
//!
//! Everything here works on row-major dense matrices of dimension at most a
//! few hundred: a cyclic Jacobi solver for real symmetric input, balanced
//! Hessenberg reduction plus shifted QR for general complex input with
//! eigenvectors certified by inverse iteration, and a shifted power method for
//! nonnegative irreducible matrices.

mod complex;
mod matrix;
mod perron;
mod spectrum;
mod symmetric;

pub use complex::{
    eig_complex_dense, eigenpairs_complex, eigenvalues_complex, inverse_iteration, spectral_radius, ComplexEigConfig,
};
pub use matrix::{ComplexMatrix, Matrix, Modulus, RealMatrix};
pub use perron::{power_iteration_nonneg, PerronConfig};
pub use spectrum::{SpectrumEntry, SpectrumSet};
pub use symmetric::{eig_real_symmetric, RealEigenPair, SymmetricEigConfig};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Eigenvalue, eigenvector normalized to unit max-norm, and the normalized
/// residual `‖Mv − λv‖∞ / max(1, ‖M‖∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    #[serde(rename = "lambda")]
    pub value: Complex64,
    pub vector: Vec<Complex64>,
    pub residual: f64,
}

/// Largest modulus entry of a vector.
pub fn norm_inf<T: Modulus + Copy>(v: &[T]) -> f64 {
    v.iter().map(|x| x.modulus()).fold(0.0, f64::max)
}

/// `‖Mv − λv‖∞ / max(1, ‖M‖∞)` for a complex matrix.
pub fn matrix_residual(m: &ComplexMatrix, value: Complex64, vector: &[Complex64]) -> f64 {
    let mv = m.mul_vec(vector);
    let r = mv.iter().zip(vector).map(|(a, b)| (a - value * b).norm()).fold(0.0, f64::max);
    r / m.norm_inf().max(1.0)
}
