//! Reduction of power-hypergraph tensor spectra to small complex matrices.
//!
//! For a connected simple graph `G` and even `k >= 4`, every eigenvalue of
//! the Laplacian tensor of `G^{k,k/2}` is an eigenvalue of some
//! `L^E(G°[U]) = D(G)[U] − E A(G[U]) E`, with `U` inducing a connected
//! subgraph and `E = diag(e^{2πiℓ_u/k})`, and conversely. The same holds for
//! `Q^E = D(G)[U] + E A(G[U]) E` and `A^E = E A(G[U]) E`. H-eigenvalues come
//! from `E = I` alone.
//!
//! Shifting a single `ℓ_u` by `k/2` flips the sign of `E_u`, which is a
//! diagonal `±1` similarity and leaves the spectrum unchanged; enumeration
//! therefore only visits `ℓ_u ∈ [0, k/2)`.

use std::cmp::Ordering;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{LoopedGraph, VertexSubset};
use crate::kind::Kind;
use crate::linalg::{
    eig_complex_dense, eig_real_symmetric, inverse_iteration, ComplexEigConfig, ComplexMatrix, EigenPair,
    SpectrumEntry, SpectrumSet, SymmetricEigConfig,
};

pub type MatrixKind = Kind;

/// `e^{2πi r/m}`, exact at multiples of a quarter turn.
pub fn unit_root(r: u64, m: u64) -> Complex64 {
    let r = r % m;
    if (4 * r).is_multiple_of(m) {
        return match 4 * r / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / m as f64)
}

/// Exact phases `ℓ_u ∈ [0, k)` for the members of a vertex subset, in subset
/// order; represents `E = diag(e^{2πiℓ_u/k})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PhaseAssignment {
    k: usize,
    ell: Vec<usize>,
}

impl PhaseAssignment {
    pub fn new(k: usize, ell: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("phase modulus must be positive".into()));
        }
        if let Some(&bad) = ell.iter().find(|&&l| l >= k) {
            return Err(Error::InvalidParameter(format!("phase {bad} not in [0, {k})")));
        }
        Ok(PhaseAssignment { k, ell })
    }

    pub fn identity(k: usize, len: usize) -> Self {
        PhaseAssignment { k, ell: vec![0; len] }
    }

    pub fn uniform(k: usize, len: usize, value: usize) -> Result<Self> {
        Self::new(k, vec![value; len])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn phases(&self) -> &[usize] {
        &self.ell
    }

    pub fn len(&self) -> usize {
        self.ell.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ell.is_empty()
    }

    /// `E_u` for the `i`-th subset member.
    pub fn factor(&self, i: usize) -> Complex64 {
        unit_root(self.ell[i] as u64, self.k as u64)
    }

    /// Representative of the sign class: every `ℓ_u` reduced mod `k/2`.
    pub fn canonical(&self) -> Self {
        let half = (self.k / 2).max(1);
        PhaseAssignment { k: self.k, ell: self.ell.iter().map(|l| l % half).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.ell.iter().all(|&l| l == 0)
    }
}

/// Provenance of one eigenvalue: the subset, phases and matrix kind whose
/// reduced matrix has it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionWitness {
    pub subset: VertexSubset,
    pub phase: PhaseAssignment,
    pub kind: Kind,
    pub eigenvalue: Complex64,
}

impl ReductionWitness {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.subset
            .len()
            .cmp(&other.subset.len())
            .then_with(|| self.subset.cmp(&other.subset))
            .then_with(|| self.phase.ell.cmp(&other.phase.ell))
            .then_with(|| self.kind.cmp(&other.kind))
            // Upper half plane first among values of one matrix.
            .then_with(|| (other.eigenvalue.im >= 0.0).cmp(&(self.eigenvalue.im >= 0.0)))
            .then_with(|| self.eigenvalue.re.total_cmp(&other.eigenvalue.re))
            .then_with(|| self.eigenvalue.im.total_cmp(&other.eigenvalue.im))
    }
}

impl Eq for ReductionWitness {}

impl PartialOrd for ReductionWitness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by `(|U|, U, ℓ)`, then kind and eigenvalue.
impl Ord for ReductionWitness {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_cmp(other)
    }
}

fn check_power_parameters(g: &LoopedGraph, k: usize) -> Result<()> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidParameter(format!("k must be even and at least 4, got {k}")));
    }
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    if !g.is_connected()? {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// `c·D(G)[U] ± E A(G[U]) E` for the chosen kind, with entry `(u, w)` carrying
/// the phase `e^{2πi(ℓ_u + ℓ_w)/k}`. Complex symmetric, not Hermitian.
pub fn reduced_matrix(
    g: &LoopedGraph,
    k: usize,
    subset: &VertexSubset,
    phases: &PhaseAssignment,
    kind: Kind,
) -> Result<ComplexMatrix> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&v) = subset.members().iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::VertexOutOfRange { vertex: v, count: g.vertex_count() });
    }
    if phases.len() != subset.len() {
        return Err(Error::DimensionMismatch { expected: subset.len(), got: phases.len() });
    }
    if phases.k() != k {
        return Err(Error::InvalidParameter(format!("phases are mod {}, expected {k}", phases.k())));
    }
    if !g.induces_connected(subset) {
        return Err(Error::Disconnected);
    }
    let members = subset.members();
    let degrees = g.degrees();
    let sign = kind.adjacency_sign() as f64;
    let diag = kind.degree_coefficient() as f64;
    Ok(ComplexMatrix::from_fn(members.len(), members.len(), |i, j| {
        let (u, w) = (members[i], members[j]);
        if i == j {
            Complex64::new(diag * degrees[u] as f64, 0.0)
        } else if g.is_adjacent(u, w) {
            sign * unit_root((phases.ell[i] + phases.ell[j]) as u64, k as u64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// One representative per sign class, `ℓ ∈ [0, k/2)^size`, lexicographic.
pub fn enumerate_phase_classes(size: usize, k: usize) -> PhaseClasses {
    PhaseClasses { k, half: (k / 2).max(1), next: Some(vec![0; size]) }
}

/// Odometer over canonical phase assignments.
#[derive(Debug, Clone)]
pub struct PhaseClasses {
    k: usize,
    half: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for PhaseClasses {
    type Item = PhaseAssignment;

    fn next(&mut self) -> Option<PhaseAssignment> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        let mut carried = true;
        for digit in successor.iter_mut().rev() {
            *digit += 1;
            if *digit < self.half {
                carried = false;
                break;
            }
            *digit = 0;
        }
        if !carried {
            self.next = Some(successor);
        }
        Some(PhaseAssignment { k: self.k, ell: current })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumConfig {
    /// Largest subset size enumerated.
    pub max_subset: usize,
    /// Maximum number of reduced matrices evaluated.
    pub budget: usize,
    pub dedup_tol: f64,
    pub eig: ComplexEigConfig,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig { max_subset: 8, budget: 1_000_000, dedup_tol: 1e-8, eig: ComplexEigConfig::default() }
    }
}

/// A spectrum of a power-hypergraph tensor assembled from reduced matrices.
/// When `complete` is false the set is only known to be contained in the
/// true spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    pub kind: Kind,
    pub k: usize,
    pub spectrum: SpectrumSet<ReductionWitness>,
    pub complete: bool,
    pub budget_used: usize,
}

/// Spectrum report in its on-disk form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub kind: Kind,
    pub k: usize,
    pub values: Vec<Complex64>,
    pub witnesses: Vec<ReductionWitness>,
    pub complete: bool,
    pub budget_used: usize,
}

impl PowerSpectrum {
    pub fn report(&self) -> SpectrumReport {
        SpectrumReport {
            kind: self.kind,
            k: self.k,
            values: self.spectrum.values(),
            witnesses: self.spectrum.entries().iter().map(|e| e.witness.clone()).collect(),
            complete: self.complete,
            budget_used: self.budget_used,
        }
    }
}

struct Plan {
    subsets: Vec<VertexSubset>,
    complete: bool,
    matrices: usize,
}

// Subsets in (|U|, U) order, cut off where the matrix budget runs out.
fn plan(g: &LoopedGraph, k: usize, config: &SpectrumConfig, with_phases: bool) -> Plan {
    let n = g.vertex_count();
    let mut subsets: Vec<VertexSubset> = g.enumerate_connected_subsets(config.max_subset.min(n)).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut complete = n <= config.max_subset;
    let mut matrices = 0usize;
    let mut kept = Vec::with_capacity(subsets.len());
    for u in subsets {
        let count = if with_phases {
            u32::try_from(u.len()).ok().and_then(|e| (k / 2).checked_pow(e)).unwrap_or(usize::MAX)
        } else {
            1
        };
        match matrices.checked_add(count) {
            Some(total) if total <= config.budget => {
                matrices = total;
                kept.push(u);
            }
            _ => {
                complete = false;
                break;
            }
        }
    }
    Plan { subsets: kept, complete, matrices }
}

fn raw_spectrum(
    g: &LoopedGraph,
    k: usize,
    kind: Kind,
    config: &SpectrumConfig,
) -> Result<(Vec<SpectrumEntry<ReductionWitness>>, bool, usize)> {
    check_power_parameters(g, k)?;
    let plan = plan(g, k, config, true);
    let items: Vec<(VertexSubset, PhaseAssignment)> =
        plan.subsets.iter().flat_map(|u| enumerate_phase_classes(u.len(), k).map(move |p| (u.clone(), p))).collect();
    let chunks: Vec<Vec<SpectrumEntry<ReductionWitness>>> = items
        .into_par_iter()
        .map(|(subset, phase)| {
            let m = reduced_matrix(g, k, &subset, &phase, kind)?;
            let local = eig_complex_dense(&m, &config.eig)?;
            Ok(local
                .values()
                .into_iter()
                .map(|value| SpectrumEntry {
                    value,
                    witness: ReductionWitness { subset: subset.clone(), phase: phase.clone(), kind, eigenvalue: value },
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok((chunks.into_iter().flatten().collect(), plan.complete, plan.matrices))
}

/// Spectrum of the `kind` tensor of `G^{k,k/2}`: the union over connected
/// `U` and sign classes of phases of the reduced-matrix spectra.
pub fn spectrum_power(g: &LoopedGraph, k: usize, kind: Kind, config: &SpectrumConfig) -> Result<PowerSpectrum> {
    let (raw, complete, used) = raw_spectrum(g, k, kind, config)?;
    Ok(PowerSpectrum {
        kind,
        k,
        spectrum: SpectrumSet::from_entries(raw, config.dedup_tol),
        complete,
        budget_used: used,
    })
}

/// H-spectrum of the `kind` tensor of `G^{k,k/2}`: union of the real
/// spectra of the kind matrices of `G°[U]` over connected `U`.
pub fn h_spectrum_power(g: &LoopedGraph, k: usize, kind: Kind, config: &SpectrumConfig) -> Result<PowerSpectrum> {
    check_power_parameters(g, k)?;
    let plan = plan(g, k, config, false);
    let sym = SymmetricEigConfig::default();
    let chunks: Vec<Vec<SpectrumEntry<ReductionWitness>>> = plan
        .subsets
        .par_iter()
        .map(|subset| {
            let sub = g.modified_induced_subgraph(subset)?;
            let m = match kind {
                Kind::Adjacency => sub.adjacency_matrix(),
                Kind::Laplacian => sub.laplacian_matrix(),
                Kind::Signless => sub.signless_laplacian_matrix(),
            };
            let phase = PhaseAssignment::identity(k, subset.len());
            Ok(eig_real_symmetric(&m, &sym)?
                .into_iter()
                .map(|p| {
                    let value = Complex64::new(p.value, 0.0);
                    SpectrumEntry {
                        value,
                        witness: ReductionWitness {
                            subset: subset.clone(),
                            phase: phase.clone(),
                            kind,
                            eigenvalue: value,
                        },
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(PowerSpectrum {
        kind,
        k,
        spectrum: SpectrumSet::from_entries(chunks.into_iter().flatten().collect(), config.dedup_tol),
        complete: plan.complete,
        budget_used: plan.matrices,
    })
}

/// Largest H-eigenvalue of the Laplacian tensor of `G^{k,k/2}`, which is the
/// largest eigenvalue of the Laplacian matrix of `G`.
#[allow(non_snake_case)]
pub fn lambda_max_L(g: &LoopedGraph, k: usize) -> Result<f64> {
    check_power_parameters(g, k)?;
    let pairs = eig_real_symmetric(&g.laplacian_matrix(), &SymmetricEigConfig::default())?;
    Ok(pairs.last().map_or(0.0, |p| p.value))
}

/// Spectral radius with the witness achieving it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoResult {
    pub value: f64,
    /// Smallest `(|U|, U, ℓ)` among the maximizers.
    pub witness: ReductionWitness,
    /// Every maximizing `(U, ℓ)` once, in witness order.
    pub ties: Vec<ReductionWitness>,
    pub complete: bool,
    pub budget_used: usize,
}

/// Spectral radius of the `kind` tensor of `G^{k,k/2}` as the maximum of
/// reduced-matrix spectral radii.
pub fn rho_power(g: &LoopedGraph, k: usize, kind: Kind, config: &SpectrumConfig) -> Result<RhoResult> {
    let (raw, complete, used) = raw_spectrum(g, k, kind, config)?;
    let scale = raw.iter().map(|e| e.value.norm()).fold(1.0, f64::max);
    let rho = raw.iter().map(|e| e.value.norm()).fold(0.0, f64::max);
    let threshold = config.dedup_tol * scale;
    let mut maximizers: Vec<ReductionWitness> =
        raw.into_iter().filter(|e| rho - e.value.norm() <= threshold).map(|e| e.witness).collect();
    maximizers.sort();
    let mut ties: Vec<ReductionWitness> = Vec::new();
    for w in maximizers {
        if ties.last().is_none_or(|t| t.subset != w.subset || t.phase != w.phase) {
            ties.push(w);
        }
    }
    let witness = ties.first().cloned().ok_or(Error::EmptyGraph)?;
    Ok(RhoResult { value: rho, witness, ties, complete, budget_used: used })
}

/// `ρ^L(G^{k,k/2})`.
#[allow(non_snake_case)]
pub fn rho_L(g: &LoopedGraph, k: usize, config: &SpectrumConfig) -> Result<RhoResult> {
    rho_power(g, k, Kind::Laplacian, config)
}

/// `D − e^{2πi l/(2l+1)} A` for `k = 4l + 2`; the reduced Laplacian of the
/// whole graph with the uniform phase `ℓ ≡ l`.
pub fn special_k2mod4_matrix(g: &LoopedGraph, k: usize) -> Result<ComplexMatrix> {
    if k % 4 != 2 {
        return Err(Error::InvalidParameter(format!("k must be 2 mod 4, got {k}")));
    }
    let l = (k - 2) / 4;
    let phase = unit_root(l as u64, (2 * l + 1) as u64);
    let degrees = g.degrees();
    let n = g.vertex_count();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(degrees[i] as f64, 0.0)
        } else if g.is_adjacent(i, j) {
            -phase
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Eigenvector of the reduced matrix named by a witness.
pub fn witness_eigenpair(g: &LoopedGraph, k: usize, witness: &ReductionWitness) -> Result<EigenPair> {
    let m = reduced_matrix(g, k, &witness.subset, &witness.phase, witness.kind)?;
    inverse_iteration(&m, witness.eigenvalue)
}
