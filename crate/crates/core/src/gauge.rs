//! Root-of-unity similarity certificates.
//!
//! A gauge `θ ∈ (Z_m)^V` certifies `L = Γ^{−(k−1)} Q Γ` (equivalently
//! `−A = Γ^{−(k−1)} A Γ`) with `Γ_v = e^{2πiθ_v/m}` exactly when, for every
//! edge `e` and every `i ∈ e`, `Σ_{j∈e} θ_j − k·θ_i ≡ m/2 (mod m)`. These
//! linear congruences are solved by elimination over each prime-power factor
//! of `m` and recombined by the Chinese remainder theorem. At `m = 2` they
//! reduce to the odd-bipartiteness system over GF(2).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraphs::Hypergraph;
use crate::kind::Kind;
use crate::tensors::{verify_diagonal_similarity, Gauge};

/// Which sign-flipping similarity to certify. Both give the same system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimilarityTarget {
    LaplacianSignless,
    AdjacencyNegation,
}

/// Linear congruences `Σ_j c_j θ_j ≡ b (mod m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularSystem {
    modulus: u64,
    vars: usize,
    rows: Vec<(Vec<(usize, u64)>, u64)>,
}

impl ModularSystem {
    pub fn new(modulus: u64, vars: usize) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        Ok(ModularSystem { modulus, vars, rows: Vec::new() })
    }

    /// Adds a row; coefficients on the same variable are summed and reduced.
    pub fn push_row(&mut self, coefficients: &[(usize, u64)], rhs: u64) -> Result<()> {
        let mut merged: BTreeMap<usize, u64> = BTreeMap::new();
        for &(v, c) in coefficients {
            if v >= self.vars {
                return Err(Error::VertexOutOfRange { vertex: v, count: self.vars });
            }
            let e = merged.entry(v).or_insert(0);
            *e = ((*e as u128 + c as u128) % self.modulus as u128) as u64;
        }
        let row = merged.into_iter().filter(|&(_, c)| c != 0).collect();
        self.rows.push((row, rhs % self.modulus));
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> &[(Vec<(usize, u64)>, u64)] {
        &self.rows
    }

    pub fn check(&self, theta: &[u64]) -> bool {
        let m = self.modulus as u128;
        theta.len() == self.vars
            && self.rows.iter().all(|(row, rhs)| {
                row.iter().map(|&(v, c)| c as u128 * (theta[v] as u128 % m) % m).sum::<u128>() % m == *rhs as u128
            })
    }
}

/// One row per (edge, member): `+1` on the other members, `1 − k` on the
/// member itself, right-hand side `m/2`. Loop edges only touch the diagonal
/// and give no rows.
pub fn build_similarity_system(h: &Hypergraph, m: u64, target: SimilarityTarget) -> Result<ModularSystem> {
    // Both targets reduce to the same congruences.
    let _ = target;
    if m % 2 == 1 {
        return Err(Error::OddModulus(m));
    }
    let k = h.rank() as u64;
    if k % 2 == 1 {
        return Err(Error::InvalidParameter(format!("similarity systems need even k, got {k}")));
    }
    let own = (1 + m - k % m) % m;
    let mut sys = ModularSystem::new(m, h.vertex_count())?;
    for e in h.uniform_edges() {
        for &i in e {
            let row: Vec<(usize, u64)> = e.iter().map(|&j| (j, if j == i { own } else { 1 })).collect();
            sys.push_row(&row, m / 2)?;
        }
    }
    Ok(sys)
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn valuation(mut x: u128, p: u128, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

fn mod_inverse(a: u128, m: u128) -> u128 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(m as i128) as u128
}

// Elimination over Z/p^e with pivots of minimal p-adic valuation; free
// variables are zero.
fn solve_prime_power(sys: &ModularSystem, p: u64, e: u32) -> Option<Vec<u128>> {
    let q = (p as u128).pow(e);
    let p = p as u128;
    let n = sys.vars;
    let mut a: Vec<Vec<u128>> = sys
        .rows
        .iter()
        .map(|(row, _)| {
            let mut dense = vec![0u128; n];
            for &(v, c) in row {
                dense[v] = c as u128 % q;
            }
            dense
        })
        .collect();
    let mut b: Vec<u128> = sys.rows.iter().map(|&(_, rhs)| rhs as u128 % q).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while rank < a.len() && rank < n {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(rank) {
            for (c, &col) in cols.iter().enumerate().skip(rank) {
                let v = valuation(row[col], p, e);
                if v < e && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                }
            }
        }
        let Some((v, r, c)) = best else { break };
        a.swap(rank, r);
        b.swap(rank, r);
        cols.swap(rank, c);
        let pc = cols[rank];
        let pv = p.pow(v);
        let unit_inv = mod_inverse(a[rank][pc] / pv, q);
        let pivot = a[rank].clone();
        for j in rank + 1..a.len() {
            let f = a[j][pc] / pv % q * unit_inv % q;
            if f == 0 {
                continue;
            }
            for (cell, &p) in a[j].iter_mut().zip(&pivot) {
                *cell = (*cell + q - f * p % q) % q;
            }
            b[j] = (b[j] + q - f * b[rank] % q) % q;
        }
        rank += 1;
    }
    if b.iter().skip(rank).any(|&x| x != 0) {
        return None;
    }
    let mut x = vec![0u128; n];
    for t in (0..rank).rev() {
        let pc = cols[t];
        let v = valuation(a[t][pc], p, e);
        let pv = p.pow(v);
        let mut rest = b[t];
        for &col in &cols[t + 1..] {
            rest = (rest + q - a[t][col] * x[col] % q) % q;
        }
        if !rest.is_multiple_of(pv) {
            return None;
        }
        let reduced_q = q / pv;
        let unit = a[t][pc] / pv % reduced_q;
        x[pc] = (rest / pv) % reduced_q * mod_inverse(unit, reduced_q) % reduced_q;
    }
    Some(x)
}

/// Some solution over `Z_m`, or `None` when the system is inconsistent.
/// Deterministic: free variables are set to zero in every prime-power part.
pub fn solve_mod_m(sys: &ModularSystem) -> Option<Gauge> {
    let m = sys.modulus as u128;
    let mut theta = vec![0u128; sys.vars];
    let mut acc = 1u128;
    for (p, e) in factorize(sys.modulus) {
        let q = (p as u128).pow(e);
        let part = solve_prime_power(sys, p, e)?;
        // x ≡ theta (mod acc), x ≡ part (mod q)
        let inv = mod_inverse(acc % q, q);
        for (t, r) in theta.iter_mut().zip(&part) {
            let delta = (r + q - *t % q) % q * inv % q;
            *t += acc * delta;
        }
        acc *= q;
    }
    let phases = theta.into_iter().map(|t| (t % m) as u64).collect();
    Gauge::new(sys.modulus, phases).ok()
}

/// Outcome at one modulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusVerdict {
    pub solvable: bool,
    pub gauge: Option<Gauge>,
}

/// Certificate search over several moduli.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub moduli: BTreeMap<u64, ModulusVerdict>,
    pub odd_bipartite: bool,
    /// Spectral consequences implied by a found certificate; empty when none
    /// was found, which leaves the question open.
    pub certified_conditions: Vec<String>,
}

impl CertificateReport {
    pub fn any_certificate(&self) -> bool {
        self.moduli.values().any(|v| v.solvable)
    }

    /// One-line summary for humans.
    pub fn summary(&self) -> String {
        let found: Vec<String> = self.moduli.iter().filter(|(_, v)| v.solvable).map(|(m, _)| m.to_string()).collect();
        let probed: Vec<String> = self.moduli.keys().map(u64::to_string).collect();
        if found.is_empty() {
            format!("no root-of-unity certificate of order dividing any of {{{}}}; inconclusive", probed.join(", "))
        } else {
            format!("certificate at m = {}; {}", found.join(", "), self.certified_conditions.join("; "))
        }
    }
}

/// `{2, k, 2k}`.
pub fn default_moduli(k: usize) -> Vec<u64> {
    let mut m = vec![2, k as u64, 2 * k as u64];
    m.sort_unstable();
    m.dedup();
    m
}

const CERTIFIED: [&str; 6] = [
    "rho(L) = rho(Q)",
    "L and Q are diagonally similar",
    "Spec(L) = Spec(Q)",
    "A and -A are diagonally similar",
    "Spec(A) = -Spec(A)",
    "-rho(A) is an eigenvalue of A",
];

/// Solves the similarity system at every modulus and verifies each gauge
/// found against the tensor identity.
pub fn certificate_report(h: &Hypergraph, moduli: &[u64]) -> Result<CertificateReport> {
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut verdicts = BTreeMap::new();
    for &m in moduli {
        let sys = build_similarity_system(h, m, SimilarityTarget::LaplacianSignless)?;
        let gauge = solve_mod_m(&sys);
        if let Some(g) = &gauge {
            if !verify_diagonal_similarity(h, Kind::Signless, Kind::Laplacian, 1, g)? {
                return Err(Error::Uncertified(m as f64));
            }
        }
        verdicts.insert(m, ModulusVerdict { solvable: gauge.is_some(), gauge });
    }
    let odd_bipartite = h.is_odd_bipartite()?.is_some();
    let certified_conditions = if verdicts.values().any(|v| v.solvable) {
        CERTIFIED.iter().map(|s| s.to_string()).collect()
    } else {
        Vec::new()
    };
    Ok(CertificateReport { moduli: verdicts, odd_bipartite, certified_conditions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::LoopedGraph;
    use crate::hypergraphs::generalized_power;

    fn power(g: LoopedGraph, k: usize) -> Hypergraph {
        generalized_power(&g, k, k / 2).unwrap().into_parts().0
    }

    #[test]
    fn quarter_turn_solves_c3_k4() {
        let p = generalized_power(&LoopedGraph::cycle(3), 4, 2).unwrap();
        let sys = build_similarity_system(p.hypergraph(), 4, SimilarityTarget::LaplacianSignless).unwrap();
        let quarter = Gauge::anchor_quarter_turn(p.half_edges(), 6, 4).unwrap();
        assert!(sys.check(quarter.phases()));
        let found = solve_mod_m(&sys).unwrap();
        assert!(sys.check(found.phases()));
        assert!(verify_diagonal_similarity(p.hypergraph(), Kind::Signless, Kind::Laplacian, 1, &found).unwrap());
        assert_eq!(sys, build_similarity_system(p.hypergraph(), 4, SimilarityTarget::AdjacencyNegation).unwrap());
    }

    #[test]
    fn no_certificate_for_c3_k6() {
        let h = power(LoopedGraph::cycle(3), 6);
        let report = certificate_report(&h, &default_moduli(6)).unwrap();
        assert!(!report.any_certificate());
        assert!(!report.odd_bipartite);
        assert!(report.certified_conditions.is_empty());
        assert!(report.summary().contains("inconclusive"));
    }

    #[test]
    fn bipartite_base_gives_m2_certificate() {
        let h = power(LoopedGraph::cycle(4), 4);
        let report = certificate_report(&h, &default_moduli(4)).unwrap();
        assert!(report.moduli[&2].solvable);
        assert!(report.odd_bipartite);
    }

    #[test]
    fn inconsistent_row() {
        let mut sys = ModularSystem::new(4, 2).unwrap();
        sys.push_row(&[(0, 4)], 1).unwrap();
        assert!(solve_mod_m(&sys).is_none());
        let mut sys = ModularSystem::new(4, 1).unwrap();
        sys.push_row(&[(0, 2)], 1).unwrap();
        assert!(solve_mod_m(&sys).is_none());
        assert!(
            build_similarity_system(&power(LoopedGraph::cycle(3), 4), 3, SimilarityTarget::LaplacianSignless).is_err()
        );
    }

    #[test]
    fn composite_moduli_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for m in [4u64, 6, 8, 9, 12, 18] {
            for _ in 0..40 {
                let mut sys = ModularSystem::new(m, 3).unwrap();
                for _ in 0..rng.gen_range(1..4) {
                    let row: Vec<(usize, u64)> = (0..3).map(|v| (v, rng.gen_range(0..m))).collect();
                    sys.push_row(&row, rng.gen_range(0..m)).unwrap();
                }
                let brute = (0..m * m * m).any(|t| sys.check(&[t % m, t / m % m, t / (m * m)]));
                match solve_mod_m(&sys) {
                    Some(g) => assert!(sys.check(g.phases())),
                    None => assert!(!brute, "missed a solution mod {m}: {sys:?}"),
                }
            }
        }
        // 2x + 3y = 5 and 4x = 4 (mod 12)
        let mut sys = ModularSystem::new(12, 2).unwrap();
        sys.push_row(&[(0, 2), (1, 3)], 5).unwrap();
        sys.push_row(&[(0, 4)], 4).unwrap();
        assert!(sys.check(solve_mod_m(&sys).unwrap().phases()));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(24), vec![(2, 3), (3, 1)]);
        assert_eq!(factorize(2), vec![(2, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }
}
