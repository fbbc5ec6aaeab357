use super::symmetric::normalize_real;
use super::{RealEigenPair, RealMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronConfig {
    pub max_iterations: usize,
    /// Stop once the Collatz–Wielandt bounds are this close (relative to
    /// `max(1, upper bound)`).
    pub gap_tol: f64,
    pub residual_tol: f64,
}

impl Default for PerronConfig {
    fn default() -> Self {
        PerronConfig { max_iterations: 100_000, gap_tol: 1e-12, residual_tol: 1e-10 }
    }
}

fn is_irreducible(m: &RealMatrix) -> bool {
    let n = m.rows();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                let w = if forward { m[(i, j)] } else { m[(j, i)] };
                if w > 0.0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    n <= 1 || (reach(true) && reach(false))
}

/// Perron root and positive vector of a nonnegative irreducible matrix.
///
/// Iterates on `M + I`, which has the same Perron vector and is primitive,
/// and stops on the Collatz–Wielandt gap.
pub fn power_iteration_nonneg(m: &RealMatrix, config: &PerronConfig) -> Result<RealEigenPair> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
    }
    if m.rows() == 0 {
        return Err(Error::EmptyGraph);
    }
    if m.data().iter().any(|&x| x < 0.0 || !x.is_finite()) {
        return Err(Error::NegativeEntry);
    }
    if !is_irreducible(m) {
        return Err(Error::Reducible);
    }
    let n = m.rows();
    let scale = m.norm_inf().max(1.0);
    let mut x = vec![1.0; n];
    for _ in 0..config.max_iterations {
        let mx = m.mul_vec(&x);
        let (mut lower, mut upper) = (f64::INFINITY, f64::NEG_INFINITY);
        for (a, b) in mx.iter().zip(&x) {
            let ratio = a / b;
            lower = lower.min(ratio);
            upper = upper.max(ratio);
        }
        if upper - lower <= config.gap_tol * upper.max(1.0) {
            let value = 0.5 * (lower + upper);
            normalize_real(&mut x);
            let mv = m.mul_vec(&x);
            let residual = mv.iter().zip(&x).map(|(a, b)| (a - value * b).abs()).fold(0.0, f64::max) / scale;
            if residual > config.residual_tol {
                return Err(Error::Uncertified(residual));
            }
            return Ok(RealEigenPair { value, vector: x, residual });
        }
        let mut y: Vec<f64> = mx.iter().zip(&x).map(|(a, b)| a + b).collect();
        normalize_real(&mut y);
        x = y;
    }
    Err(Error::NoConvergence(config.max_iterations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::LoopedGraph;

    #[test]
    fn regular_graphs() {
        let q3 = LoopedGraph::cycle(3).signless_laplacian_matrix();
        let p = power_iteration_nonneg(&q3, &PerronConfig::default()).unwrap();
        assert!((p.value - 4.0).abs() < 1e-12);
        assert!(p.vector.iter().all(|&v| (v - 1.0).abs() < 1e-12));
        let q5 = LoopedGraph::cycle(5).signless_laplacian_matrix();
        let p = power_iteration_nonneg(&q5, &PerronConfig::default()).unwrap();
        assert!((p.value - 4.0).abs() < 1e-10);
    }

    #[test]
    fn scalar_and_periodic() {
        let p = power_iteration_nonneg(&RealMatrix::from_rows(&[vec![2.5]]), &PerronConfig::default()).unwrap();
        assert_eq!(p.value, 2.5);
        // A(C4) is periodic; the shift makes it converge anyway.
        let a4 = LoopedGraph::cycle(4).adjacency_matrix();
        let p = power_iteration_nonneg(&a4, &PerronConfig::default()).unwrap();
        assert!((p.value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn path_agrees_with_symmetric_solver() {
        let a = LoopedGraph::path(5).adjacency_matrix();
        let p = power_iteration_nonneg(&a, &PerronConfig::default()).unwrap();
        let sym = crate::linalg::eig_real_symmetric(&a, &Default::default()).unwrap();
        assert!((p.value - sym.last().unwrap().value).abs() < 1e-9);
        assert!(p.vector.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn rejects_invalid() {
        let reducible = RealMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        assert_eq!(power_iteration_nonneg(&reducible, &PerronConfig::default()), Err(Error::Reducible));
        let negative = RealMatrix::from_rows(&[vec![1.0, -1.0], vec![1.0, 1.0]]);
        assert_eq!(power_iteration_nonneg(&negative, &PerronConfig::default()), Err(Error::NegativeEntry));
    }
}
