use num_complex::Complex64;

use super::{matrix_residual, norm_inf, ComplexMatrix, EigenPair, SpectrumSet};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEigConfig {
    pub max_dim: usize,
    /// QR sweeps allowed per matrix dimension.
    pub sweeps_per_dim: usize,
    /// Bound on `‖Mv − λv‖∞ / max(1, ‖M‖∞)` for every certified pair.
    pub backward_tol: f64,
    pub dedup_tol: f64,
}

impl Default for ComplexEigConfig {
    fn default() -> Self {
        ComplexEigConfig { max_dim: 64, sweeps_per_dim: 100, backward_tol: 1e-9, dedup_tol: 1e-8 }
    }
}

fn check_input(m: &ComplexMatrix, config: &ComplexEigConfig) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
    }
    if m.rows() > config.max_dim {
        return Err(Error::TooLarge { dim: m.rows(), cap: config.max_dim });
    }
    if !m.is_finite() {
        return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
    }
    Ok(())
}

/// All `n` eigenvalues with multiplicity, sorted by `(re, im)`.
pub fn eigenvalues_complex(m: &ComplexMatrix, config: &ComplexEigConfig) -> Result<Vec<Complex64>> {
    check_input(m, config)?;
    let mut h = m.clone();
    balance(&mut h);
    hessenberg(&mut h);
    let values = hessenberg_qr(h, config.sweeps_per_dim * m.rows().max(1))?;
    let mut values = merge_defective_clusters(m, values, config);
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(values)
}

// A defective eigenvalue with a Jordan block of size p comes back from QR as
// p values spread by about eps^{1/p}; their mean is accurate to about eps.
// Clusters are grown over increasing radii and replaced by their mean only
// when the mean still passes the backward-error test.
fn merge_defective_clusters(
    m: &ComplexMatrix,
    mut values: Vec<Complex64>,
    config: &ComplexEigConfig,
) -> Vec<Complex64> {
    let n = values.len();
    if n < 2 {
        return values;
    }
    let scale = values.iter().map(|z| z.norm()).fold(m.norm_inf(), f64::max).max(1.0);
    for exponent in (2..=12).rev() {
        let radius = scale * 10f64.powi(-exponent);
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        for i in 0..n {
            for j in i + 1..n {
                if (values[i] - values[j]).norm() <= radius {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        for root in 0..n {
            let members: Vec<usize> = (0..n).filter(|&i| find(&mut parent, i) == root).collect();
            if members.len() < 2 {
                continue;
            }
            let mean = members.iter().map(|&i| values[i]).sum::<Complex64>() / members.len() as f64;
            if members.iter().all(|&i| values[i] == mean) {
                continue;
            }
            if inverse_iteration(m, mean).is_ok_and(|p| p.residual <= config.backward_tol) {
                for &i in &members {
                    values[i] = mean;
                }
            }
        }
    }
    values
}

/// Eigenvalues with inverse-iteration eigenvectors; every pair is certified
/// against `config.backward_tol`.
pub fn eigenpairs_complex(m: &ComplexMatrix, config: &ComplexEigConfig) -> Result<Vec<EigenPair>> {
    let values = eigenvalues_complex(m, config)?;
    let scale = values.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut pairs: Vec<EigenPair> = Vec::with_capacity(values.len());
    for (idx, &value) in values.iter().enumerate() {
        // Earlier vectors of the same eigenvalue cluster are projected out once.
        let cluster: Vec<&[Complex64]> = pairs
            .iter()
            .filter(|p| (p.value - value).norm() <= config.dedup_tol * scale)
            .map(|p| p.vector.as_slice())
            .collect();
        let pair = inverse_iteration_with(m, value, idx, &cluster)?;
        if pair.residual > config.backward_tol {
            return Err(Error::Uncertified(pair.residual));
        }
        pairs.push(pair);
    }
    Ok(pairs)
}

/// Deduplicated, certified spectrum.
pub fn eig_complex_dense(m: &ComplexMatrix, config: &ComplexEigConfig) -> Result<SpectrumSet> {
    let pairs = eigenpairs_complex(m, config)?;
    Ok(SpectrumSet::from_values(pairs.into_iter().map(|p| p.value), config.dedup_tol))
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(m: &ComplexMatrix, config: &ComplexEigConfig) -> Result<f64> {
    Ok(eig_complex_dense(m, config)?.max_modulus())
}

/// Eigenvector for a known eigenvalue approximation.
pub fn inverse_iteration(m: &ComplexMatrix, value: Complex64) -> Result<EigenPair> {
    inverse_iteration_with(m, value, 0, &[])
}

fn inverse_iteration_with(
    m: &ComplexMatrix,
    value: Complex64,
    variant: usize,
    previous: &[&[Complex64]],
) -> Result<EigenPair> {
    let n = m.rows();
    if n == 0 {
        return Err(Error::ZeroVector);
    }
    let norm = m.norm_inf().max(1.0);
    let mut shifted = m.clone();
    for i in 0..n {
        shifted[(i, i)] -= value;
    }
    let lu = Lu::factor(shifted, norm);

    let golden = 0.618_033_988_749_895_f64;
    let mut x: Vec<Complex64> = (0..n)
        .map(|j| {
            let t = ((j + 1 + variant * 7) as f64 * golden).fract();
            Complex64::new(1.0 + t, 0.5 - t)
        })
        .collect();
    project_out(&mut x, previous);

    let mut best: Option<EigenPair> = None;
    for step in 0..4 {
        x = lu.solve(&x);
        if step == 1 {
            project_out(&mut x, previous);
        }
        if !normalize_complex(&mut x) {
            break;
        }
        let residual = matrix_residual(m, value, &x);
        if best.as_ref().is_none_or(|b| residual < b.residual) {
            best = Some(EigenPair { value, vector: x.clone(), residual });
        }
    }
    best.ok_or(Error::ZeroVector)
}

fn project_out(x: &mut [Complex64], previous: &[&[Complex64]]) {
    for &p in previous {
        let pp: f64 = p.iter().map(|z| z.norm_sqr()).sum();
        if pp == 0.0 {
            continue;
        }
        let coef: Complex64 = p.iter().zip(x.iter()).map(|(a, b)| a.conj() * b).sum::<Complex64>() / pp;
        let before = norm_inf(x);
        let mut projected: Vec<Complex64> = x.iter().zip(p).map(|(b, a)| b - coef * a).collect();
        // Keep the original direction when the projection annihilates it.
        if norm_inf(&projected) > 1e-8 * before {
            x.swap_with_slice(&mut projected);
        }
    }
}

/// Scales to unit max-norm with the first largest entry real positive.
pub(crate) fn normalize_complex(x: &mut [Complex64]) -> bool {
    let norm = norm_inf(x);
    if norm == 0.0 || !norm.is_finite() {
        return false;
    }
    let pivot = x.iter().copied().find(|z| z.norm() >= norm * (1.0 - 1e-12)).unwrap_or(ONE);
    let factor = pivot.conj() / (pivot.norm() * norm);
    for z in x.iter_mut() {
        *z *= factor;
    }
    true
}

struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    // Partial pivoting; tiny pivots are replaced so singular shifts still solve.
    fn factor(mut a: ComplexMatrix, norm: f64) -> Self {
        let n = a.rows();
        let tiny = f64::EPSILON * norm;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm())).unwrap();
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = t;
                }
            }
            if a[(k, k)].norm() < tiny {
                a[(k, k)] = Complex64::new(tiny, 0.0);
            }
            let pivot = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / pivot;
                a[(i, k)] = f;
                if f != ZERO {
                    for j in k + 1..n {
                        let u = a[(k, j)];
                        a[(i, j)] -= f * u;
                    }
                }
            }
        }
        Lu { lu: a, perm }
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = b.len();
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                y[i] = y[i] - l * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                y[i] = y[i] - u * y[j];
            }
            y[i] /= self.lu[(i, i)];
        }
        y
    }
}

// Diagonal similarity by powers of two equalizing row and column norms.
fn balance(a: &mut ComplexMatrix) {
    let n = a.rows();
    let l1 = |z: Complex64| z.re.abs() + z.im.abs();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += l1(a[(j, i)]);
                    r += l1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let (mut c2, mut r2) = (c, r);
            while c2 < r2 / 2.0 {
                c2 *= 2.0;
                r2 /= 2.0;
                f *= 2.0;
            }
            while c2 >= r2 * 2.0 {
                c2 /= 2.0;
                r2 *= 2.0;
                f /= 2.0;
            }
            if (c2 + r2) < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

// Householder reduction to upper Hessenberg form.
fn hessenberg(h: &mut ComplexMatrix) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 { ONE } else { x[0] / x[0].norm() };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        for j in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)]).sum();
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= 2.0 * vi * s;
            }
        }
        for r in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(i, vi)| h[(r, k + 1 + i)] * vi).sum();
            for (i, vi) in v.iter().enumerate() {
                h[(r, k + 1 + i)] -= 2.0 * s * vi.conj();
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

// Single-shift complex QR on an upper Hessenberg matrix, eigenvalues only.
fn hessenberg_qr(mut h: ComplexMatrix, budget: usize) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut values = vec![ZERO; n];
    if n == 0 {
        return Ok(values);
    }
    let norm = h.norm_inf();
    let mut hi = n - 1;
    let mut iterations = 0usize;
    let mut since_deflation = 0usize;
    loop {
        // Zero negligible subdiagonals of the active part.
        for i in 1..=hi {
            let scale = h[(i, i)].norm() + h[(i - 1, i - 1)].norm();
            let scale = if scale == 0.0 { norm } else { scale };
            if h[(i, i - 1)].norm() <= f64::EPSILON * scale {
                h[(i, i - 1)] = ZERO;
            }
        }
        if hi == 0 || h[(hi, hi - 1)] == ZERO {
            values[hi] = h[(hi, hi)];
            since_deflation = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)] != ZERO {
            lo -= 1;
        }
        if iterations >= budget {
            return Err(Error::NoConvergence(budget));
        }
        iterations += 1;
        since_deflation += 1;

        let shift = if since_deflation % 11 == 10 {
            h[(hi, hi)] + Complex64::new(0.75, 0.5) * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_step(&mut h, lo, hi, shift);
    }
    Ok(values)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for j in lo..hi {
        let x = h[(j, j)];
        let y = h[(j + 1, j)];
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (1.0, ZERO)
        } else if x.norm() == 0.0 {
            (0.0, ONE)
        } else {
            (x.norm() / r, (x / x.norm()) * y.conj() / r)
        };
        for col in j..=hi {
            let a = h[(j, col)];
            let b = h[(j + 1, col)];
            h[(j, col)] = a * c + s * b;
            h[(j + 1, col)] = -s.conj() * a + b * c;
        }
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let j = lo + offset;
        for row in lo..=(j + 2).min(hi) {
            let a = h[(row, j)];
            let b = h[(row, j + 1)];
            h[(row, j)] = a * c + b * s.conj();
            h[(row, j + 1)] = -a * s + b * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RealMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_spectrum() {
        let m = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0), c(-2.0, 0.0)]);
        let s = eig_complex_dense(&m, &ComplexEigConfig::default()).unwrap();
        assert_eq!(s.len(), 3);
        for z in [c(1.0, 0.0), c(0.0, 1.0), c(-2.0, 0.0)] {
            assert!(s.contains(z, 1e-12));
        }
    }

    #[test]
    fn rotated_cycle_circulant() {
        // 2I − ωA(C3): A(C3) has eigenvalues 2, −1, −1.
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let a = crate::graphs::LoopedGraph::cycle(3).adjacency_matrix().to_complex();
        let m = ComplexMatrix::from_fn(3, 3, |i, j| if i == j { c(2.0, 0.0) } else { -omega * a[(i, j)] });
        let s = eig_complex_dense(&m, &ComplexEigConfig::default()).unwrap();
        assert!(s.contains(c(2.0, 0.0) - 2.0 * omega, 1e-12));
        assert!(s.contains(c(2.0, 0.0) + omega, 1e-12));
        assert_eq!(s.len(), 2);
        let rho = spectral_radius(&m, &ComplexEigConfig::default()).unwrap();
        assert!((rho - 2.0 * 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_radius() {
        let rho = spectral_radius(&ComplexMatrix::zeros(3, 3), &ComplexEigConfig::default()).unwrap();
        assert_eq!(rho, 0.0);
    }

    #[test]
    fn jordan_block_is_certified() {
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![ZERO, c(1.0, 0.0)]]);
        let pairs = eigenpairs_complex(&m, &ComplexEigConfig::default()).unwrap();
        assert!(pairs.iter().all(|p| (p.value - ONE).norm() < 1e-7 && p.residual < 1e-9));
    }

    #[test]
    fn real_symmetric_consistency() {
        let r = RealMatrix::from_rows(&[vec![4.0, 1.0, 0.5], vec![1.0, 3.0, -1.0], vec![0.5, -1.0, 2.0]]);
        let sym = crate::linalg::eig_real_symmetric(&r, &Default::default()).unwrap();
        let raw = eigenvalues_complex(&r.to_complex(), &ComplexEigConfig::default()).unwrap();
        for (a, b) in sym.iter().zip(&raw) {
            assert!((a.value - b.re).abs() < 1e-9 && b.im.abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_oversized() {
        let config = ComplexEigConfig { max_dim: 2, ..Default::default() };
        assert!(matches!(eigenvalues_complex(&ComplexMatrix::identity(3), &config), Err(Error::TooLarge { .. })));
    }
}
