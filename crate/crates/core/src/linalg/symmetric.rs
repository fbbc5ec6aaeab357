use serde::{Deserialize, Serialize};

use super::{norm_inf, RealMatrix};
use crate::error::{Error, Result};

/// Real eigenpair of a symmetric matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealEigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigConfig {
    pub max_dim: usize,
    pub symmetry_tol: f64,
    pub residual_tol: f64,
    pub max_sweeps: usize,
}

impl Default for SymmetricEigConfig {
    fn default() -> Self {
        SymmetricEigConfig { max_dim: 256, symmetry_tol: 1e-12, residual_tol: 1e-10, max_sweeps: 100 }
    }
}

/// All eigenpairs of a real symmetric matrix by cyclic Jacobi rotations,
/// sorted by ascending eigenvalue.
pub fn eig_real_symmetric(m: &RealMatrix, config: &SymmetricEigConfig) -> Result<Vec<RealEigenPair>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
    }
    let n = m.rows();
    if n > config.max_dim {
        return Err(Error::TooLarge { dim: n, cap: config.max_dim });
    }
    let scale = m.norm_inf().max(1.0);
    let asym = m.max_asymmetry();
    if asym > config.symmetry_tol * scale {
        return Err(Error::NotSymmetric(asym));
    }
    let mut a = RealMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let mut v = RealMatrix::identity(n);
    let frob = a.data().iter().map(|x| x * x).sum::<f64>().sqrt();

    let mut converged = n <= 1;
    for _ in 0..config.max_sweeps {
        let off: f64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].powi(2)).sum();
        if off.sqrt() <= f64::EPSILON * 1e-2 * frob || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(config.max_sweeps));
    }

    let mut pairs = Vec::with_capacity(n);
    for j in 0..n {
        let mut vector: Vec<f64> = (0..n).map(|i| v[(i, j)]).collect();
        normalize_real(&mut vector);
        let value = a[(j, j)];
        let mv = m.mul_vec(&vector);
        let r = mv.iter().zip(&vector).map(|(x, y)| (x - value * y).abs()).fold(0.0, f64::max) / scale;
        if r > config.residual_tol {
            return Err(Error::Uncertified(r));
        }
        pairs.push(RealEigenPair { value, vector, residual: r });
    }
    pairs.sort_by(|x, y| x.value.total_cmp(&y.value));
    Ok(pairs)
}

/// Scales to unit max-norm with the first largest entry positive.
pub(crate) fn normalize_real(v: &mut [f64]) {
    let norm = norm_inf(v);
    if norm == 0.0 {
        return;
    }
    let pivot = v.iter().copied().find(|x| x.abs() == norm).unwrap_or(norm);
    let factor = pivot.signum() / norm;
    for x in v.iter_mut() {
        *x *= factor;
    }
}
