//! Adjacency, Laplacian and signless Laplacian tensors of uniform hypergraphs.
//!
//! The adjacency tensor has `a_{i1…ik} = 1/(k−1)!` whenever `{i1,…,ik}` is an
//! edge, so `(A x^{k−1})_v` is the sum, over edges `e ∋ v`, of the product of
//! `x` over `e ∖ {v}`. Nothing is ever materialized as a k-way array.
//! Loop edges (half edges of size `k/2` produced from loops of `G°[U]`) only
//! raise the degree and never enter `A`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::VertexSubset;
use crate::hypergraphs::{HalfEdgeMap, Hypergraph, PowerHypergraph};
use crate::kind::Kind;
use crate::linalg::{norm_inf, EigenPair};
use crate::reduction::{reduced_matrix, unit_root, PhaseAssignment};

pub type TensorKind = Kind;

/// A complex value per hypergraph vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HyperVector(Vec<Complex64>);

impl HyperVector {
    pub fn new(values: Vec<Complex64>) -> Self {
        HyperVector(values)
    }

    pub fn from_real(values: &[f64]) -> Self {
        HyperVector(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        HyperVector(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn ones(n: usize) -> Self {
        HyperVector(vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn unit(n: usize, v: usize) -> Self {
        let mut x = Self::zeros(n);
        x.0[v] = Complex64::new(1.0, 0.0);
        x
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn norm_inf(&self) -> f64 {
        norm_inf(&self.0)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        HyperVector(self.0.iter().map(|x| x * c).collect())
    }

    /// `x^{[p]}`, the entrywise power.
    pub fn entrywise_pow(&self, p: u32) -> Self {
        HyperVector(self.0.iter().map(|x| x.powu(p)).collect())
    }
}

/// Implicit `A`, `L = D − A` or `Q = D + A` of a hypergraph.
#[derive(Debug, Clone)]
pub struct TensorOperator<'a> {
    hypergraph: &'a Hypergraph,
    kind: Kind,
    degrees: Vec<usize>,
}

impl<'a> TensorOperator<'a> {
    pub fn new(hypergraph: &'a Hypergraph, kind: Kind) -> Self {
        TensorOperator { hypergraph, kind, degrees: hypergraph.degrees() }
    }

    pub fn hypergraph(&self) -> &'a Hypergraph {
        self.hypergraph
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.hypergraph.rank()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }
}

/// `T x^{k−1}`, in `O(k·|E|)`.
pub fn tensor_apply(t: &TensorOperator<'_>, x: &HyperVector) -> Result<HyperVector> {
    let n = t.hypergraph.vertex_count();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    let k = t.order();
    let xs = x.as_slice();
    let sign = t.kind.adjacency_sign() as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut prefix = vec![Complex64::new(1.0, 0.0); k + 1];
    for e in t.hypergraph.uniform_edges() {
        for (p, &v) in e.iter().enumerate() {
            prefix[p + 1] = prefix[p] * xs[v];
        }
        let mut suffix = Complex64::new(1.0, 0.0);
        for (p, &v) in e.iter().enumerate().rev() {
            out[v] += sign * prefix[p] * suffix;
            suffix *= xs[v];
        }
    }
    let c = t.kind.degree_coefficient();
    if c != 0 {
        let power = (k - 1) as u32;
        for (v, o) in out.iter_mut().enumerate() {
            if t.degrees[v] > 0 {
                *o += (c * t.degrees[v] as i64) as f64 * xs[v].powu(power);
            }
        }
    }
    Ok(HyperVector(out))
}

/// `‖T x^{k−1} − λ x^{[k−1]}‖∞ / ‖x‖∞^{k−1}`; invariant under rescaling `x`.
pub fn eig_residual(t: &TensorOperator<'_>, value: Complex64, x: &HyperVector) -> Result<f64> {
    let scale = x.norm_inf();
    if scale == 0.0 {
        return Err(Error::ZeroVector);
    }
    // Rescale first so large k cannot overflow the powers.
    let y = x.scaled(Complex64::new(1.0 / scale, 0.0));
    let ty = tensor_apply(t, &y)?;
    let power = (t.order() - 1) as u32;
    Ok(ty.0.iter().zip(&y.0).map(|(a, b)| (a - value * b.powu(power)).norm()).fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NqzConfig {
    pub max_iterations: usize,
    /// Collatz–Wielandt gap, relative to `max(1, upper bound)`.
    pub gap_tol: f64,
    pub residual_tol: f64,
}

impl Default for NqzConfig {
    fn default() -> Self {
        NqzConfig { max_iterations: 100_000, gap_tol: 1e-10, residual_tol: 1e-8 }
    }
}

/// Result of the tensor power method: the largest H-eigenvalue, its positive
/// eigenvector (unit max-norm) and the final Collatz–Wielandt bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct NqzResult {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub lower: f64,
    pub upper: f64,
}

impl NqzResult {
    pub fn hypervector(&self) -> HyperVector {
        HyperVector::from_real(&self.vector)
    }

    pub fn to_eigenpair(&self) -> EigenPair {
        EigenPair {
            value: Complex64::new(self.value, 0.0),
            vector: self.hypervector().into_inner(),
            residual: self.residual,
        }
    }
}

fn apply_real(t: &TensorOperator<'_>, x: &[f64]) -> Vec<f64> {
    let k = t.order();
    let mut out = vec![0.0; x.len()];
    let mut prefix = vec![1.0; k + 1];
    for e in t.hypergraph.uniform_edges() {
        for (p, &v) in e.iter().enumerate() {
            prefix[p + 1] = prefix[p] * x[v];
        }
        let mut suffix = 1.0;
        for (p, &v) in e.iter().enumerate().rev() {
            out[v] += prefix[p] * suffix;
            suffix *= x[v];
        }
    }
    let c = t.kind.degree_coefficient() as f64;
    for (v, o) in out.iter_mut().enumerate() {
        *o += c * t.degrees[v] as f64 * x[v].powi(k as i32 - 1);
    }
    out
}

/// Largest H-eigenvalue of `A` or `Q` of a connected hypergraph, by the
/// Ng–Qi–Zhou iteration `x ← normalize(((T + I) x^{k−1})^{[1/(k−1)]})`.
///
/// The identity shift makes the iteration converge for weakly irreducible
/// tensors that are not primitive.
pub fn nqz_power_iteration(t: &TensorOperator<'_>, config: &NqzConfig) -> Result<NqzResult> {
    if t.kind == Kind::Laplacian {
        return Err(Error::InvalidParameter("power iteration needs a nonnegative tensor (A or Q)".into()));
    }
    let h = t.hypergraph;
    if h.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let k = t.order();
    let root = 1.0 / (k as f64 - 1.0);
    let mut x = vec![1.0; h.vertex_count()];
    for iteration in 1..=config.max_iterations {
        let y = apply_real(t, &x);
        let (mut lower, mut upper) = (f64::INFINITY, 0.0f64);
        for (yv, xv) in y.iter().zip(&x) {
            let r = yv / xv.powi(k as i32 - 1);
            lower = lower.min(r);
            upper = upper.max(r);
        }
        if upper - lower <= config.gap_tol * upper.max(1.0) {
            let value = 0.5 * (lower + upper);
            let residual = eig_residual(t, Complex64::new(value, 0.0), &HyperVector::from_real(&x))?;
            if residual <= config.residual_tol {
                return Ok(NqzResult { value, vector: x, residual, iterations: iteration, lower, upper });
            }
        }
        let mut next: Vec<f64> = y.iter().zip(&x).map(|(yv, xv)| (yv + xv.powi(k as i32 - 1)).powf(root)).collect();
        let top = next.iter().copied().fold(0.0, f64::max);
        next.iter_mut().for_each(|v| *v /= top);
        x = next;
    }
    Err(Error::NoConvergence(config.max_iterations))
}

fn check_half_power(power: &PowerHypergraph) -> Result<()> {
    if power.k() < 4 || 2 * power.s() != power.k() {
        return Err(Error::InvalidParameter(format!(
            "lifts need G^{{k,k/2}} with k >= 4, got k={}, s={}",
            power.k(),
            power.s()
        )));
    }
    Ok(())
}

fn matrix_eigen_residual(m: &crate::linalg::ComplexMatrix, value: Complex64, x: &[Complex64]) -> Result<f64> {
    if m.rows() != x.len() {
        return Err(Error::DimensionMismatch { expected: m.rows(), got: x.len() });
    }
    let scale = norm_inf(x);
    if scale == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(crate::linalg::matrix_residual(m, value, x) / scale)
}

/// Principal `(k/2)`-th root: modulus `|z|^{2/k}`, argument `arg(z)·2/k` with
/// `arg ∈ (−π, π]`.
pub fn principal_root(z: Complex64, k: usize) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return z;
    }
    let mut arg = z.arg();
    if arg <= -std::f64::consts::PI {
        arg = std::f64::consts::PI;
    }
    let p = 2.0 / k as f64;
    Complex64::from_polar(z.norm().powf(p), arg * p)
}

/// Lifts a real eigenpair of the `kind` matrix of `G°[U]` to an H-eigenvector
/// of the `kind` tensor of `G^{k,k/2}`: the anchor of **u** gets
/// `sgn(x_u)|x_u|^{2/k}`, the rest of **u** gets `|x_u|^{2/k}`, and vertices
/// outside **U** get zero.
pub fn lift_real(
    power: &PowerHypergraph,
    kind: Kind,
    subset: &VertexSubset,
    value: f64,
    x: &[f64],
) -> Result<HyperVector> {
    check_half_power(power)?;
    let phases = PhaseAssignment::identity(power.k(), subset.len());
    let m = reduced_matrix(power.base(), power.k(), subset, &phases, kind)?;
    let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let r = matrix_eigen_residual(&m, Complex64::new(value, 0.0), &xc)?;
    if r > 1e-10 {
        return Err(Error::NotEigenpair(r));
    }
    let map = power.half_edges();
    let p = 2.0 / power.k() as f64;
    let mut y = HyperVector::zeros(power.hypergraph().vertex_count());
    for (i, &u) in subset.members().iter().enumerate() {
        let magnitude = x[i].abs().powf(p);
        for &v in map.half_edge(u) {
            y.0[v] = Complex64::new(magnitude, 0.0);
        }
        if x[i] < 0.0 {
            y.0[map.anchor(u)] = Complex64::new(-magnitude, 0.0);
        }
    }
    Ok(y)
}

/// Lifts an eigenpair of the reduced matrix with phases `ℓ` to an
/// eigenvector of the `kind` tensor of `G^{k,k/2}`. Every member of **u**
/// gets the principal root `x_u^{2/k}`; the member after the anchor also
/// carries `e^{2πiℓ_u/k}`, so the product over **u** is `E_u x_u`.
pub fn lift_phase(
    power: &PowerHypergraph,
    kind: Kind,
    subset: &VertexSubset,
    phases: &PhaseAssignment,
    value: Complex64,
    x: &[Complex64],
) -> Result<HyperVector> {
    check_half_power(power)?;
    let m = reduced_matrix(power.base(), power.k(), subset, phases, kind)?;
    let r = matrix_eigen_residual(&m, value, x)?;
    if r > 1e-9 {
        return Err(Error::NotEigenpair(r));
    }
    let map = power.half_edges();
    let mut y = HyperVector::zeros(power.hypergraph().vertex_count());
    for (i, &u) in subset.members().iter().enumerate() {
        let root = principal_root(x[i], power.k());
        let members = map.half_edge(u);
        for &v in members {
            y.0[v] = root;
        }
        y.0[members[1]] *= phases.factor(i);
    }
    Ok(y)
}

/// Multiplies every anchor by `i`. For `4 | k` this maps an eigenvector of
/// `Q(G^{k,k/2})` to one of `L(G^{k,k/2})` with the same eigenvalue.
pub fn rotate_signless_to_laplacian(h: &Hypergraph, map: &HalfEdgeMap, x: &HyperVector) -> Result<HyperVector> {
    if !h.rank().is_multiple_of(4) {
        return Err(Error::InvalidParameter(format!("rotation needs 4 | k, got k={}", h.rank())));
    }
    if x.len() != h.vertex_count() {
        return Err(Error::DimensionMismatch { expected: h.vertex_count(), got: x.len() });
    }
    let mut y = x.clone();
    for a in map.anchors() {
        y.0[a] *= Complex64::new(0.0, 1.0);
    }
    Ok(y)
}

/// Diagonal unitary `Γ` with `Γ_v = e^{2πi·phase_v/m}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GaugeJson", into = "GaugeJson")]
pub struct Gauge {
    modulus: u64,
    phase: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GaugeJson {
    #[serde(rename = "mod")]
    modulus: u64,
    phase: BTreeMap<usize, u64>,
}

impl From<Gauge> for GaugeJson {
    fn from(g: Gauge) -> Self {
        GaugeJson { modulus: g.modulus, phase: g.phase.into_iter().enumerate().collect() }
    }
}

impl TryFrom<GaugeJson> for Gauge {
    type Error = Error;

    fn try_from(j: GaugeJson) -> Result<Self> {
        let n = j.phase.len();
        if j.phase.keys().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::Parse(format!("gauge phases must cover vertices 0..{n}")));
        }
        Gauge::new(j.modulus, j.phase.into_values().collect())
    }
}

impl Gauge {
    pub fn new(modulus: u64, phase: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("gauge modulus must be positive".into()));
        }
        if let Some(&p) = phase.iter().find(|&&p| p >= modulus) {
            return Err(Error::InvalidParameter(format!("phase {p} not in [0, {modulus})")));
        }
        Ok(Gauge { modulus, phase })
    }

    pub fn identity(modulus: u64, n: usize) -> Result<Self> {
        Self::new(modulus, vec![0; n])
    }

    /// `Γ_u = i` on every anchor and `1` elsewhere, at modulus `k`.
    pub fn anchor_quarter_turn(map: &HalfEdgeMap, vertex_count: usize, k: usize) -> Result<Self> {
        if !k.is_multiple_of(4) {
            return Err(Error::InvalidParameter(format!("k/4 is not an integer for k={k}")));
        }
        let mut phase = vec![0; vertex_count];
        for a in map.anchors() {
            phase[a] = (k / 4) as u64;
        }
        Self::new(k as u64, phase)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn phases(&self) -> &[u64] {
        &self.phase
    }

    pub fn len(&self) -> usize {
        self.phase.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phase.is_empty()
    }

    pub fn factor(&self, v: usize) -> Complex64 {
        unit_root(self.phase[v], self.modulus)
    }
}

/// Exact check of `sign·T_to = Γ^{−(k−1)} T_from Γ`.
///
/// Off the diagonal this reads `Σ_{j∈e} θ_j − k·θ_i ≡ offset (mod m)` for
/// every edge `e` and `i ∈ e`, with `offset = m/2` when the adjacency signs
/// disagree and `0` otherwise; on the diagonal `Γ` cancels, so the degree
/// coefficients must agree outright.
pub fn verify_diagonal_similarity(h: &Hypergraph, from: Kind, to: Kind, sign: i8, gauge: &Gauge) -> Result<bool> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParameter(format!("sign must be +1 or -1, got {sign}")));
    }
    if gauge.len() != h.vertex_count() {
        return Err(Error::DimensionMismatch { expected: h.vertex_count(), got: gauge.len() });
    }
    let m = gauge.modulus as u128;
    let flip = i64::from(sign) * to.adjacency_sign() * from.adjacency_sign() == -1;
    if flip && m % 2 == 1 {
        return Err(Error::OddModulus(gauge.modulus));
    }
    let offset = if flip { m / 2 } else { 0 };
    let diagonal_ok = i64::from(sign) * to.degree_coefficient() == from.degree_coefficient();
    if !diagonal_ok && h.degrees().iter().any(|&d| d > 0) {
        return Ok(false);
    }
    let k = h.rank() as u128 % m;
    for e in h.uniform_edges() {
        let sum = e.iter().map(|&v| gauge.phase[v] as u128).sum::<u128>() % m;
        for &i in e {
            if (sum + m * m - k * gauge.phase[i] as u128 % m) % m != offset {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
