//! Independent oracles shared by the integration tests and the acceptance run.
//! Nothing here calls the crate's own eigensolvers or enumerators.
#![allow(dead_code)]

use std::f64::consts::PI;

use hyperspec::{Complex64, Kind, LoopedGraph};
use nalgebra::{DMatrix, Schur, SymmetricEigen};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Eigenvalues with clusters closer than `1e-3` replaced by their mean, which
/// recovers defective eigenvalues that Schur splits by about eps^{1/p}.
pub fn eigenvalues(rows: &[Vec<Complex64>]) -> Vec<Complex64> {
    let raw = schur_eigenvalues(rows);
    let mut out: Vec<Complex64> = Vec::with_capacity(raw.len());
    let mut used = vec![false; raw.len()];
    for i in 0..raw.len() {
        if used[i] {
            continue;
        }
        let mut group = vec![i];
        used[i] = true;
        let mut g = 0;
        while g < group.len() {
            for j in 0..raw.len() {
                if !used[j] && (raw[group[g]] - raw[j]).norm() < 1e-3 {
                    used[j] = true;
                    group.push(j);
                }
            }
            g += 1;
        }
        let mean = group.iter().map(|&j| raw[j]).sum::<Complex64>() / group.len() as f64;
        out.extend(std::iter::repeat_n(mean, group.len()));
    }
    out
}

/// nalgebra's complex Schur form can stall on exactly structured input, so
/// a stalled attempt is retried on a fixed similarity transform.
fn schur_eigenvalues(rows: &[Vec<Complex64>]) -> Vec<Complex64> {
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    if let Some(s) = Schur::try_new(m.clone(), 1e-15, 10_000) {
        return s.eigenvalues().expect("complex Schur form is triangular").iter().copied().collect();
    }
    let p = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            c(1.0, 0.0)
        } else {
            c(0.1 * ((i * 7 + j * 3) % 5) as f64 - 0.2, 0.05 * ((i + 2 * j) % 3) as f64)
        }
    });
    let pinv = p.clone().try_inverse().expect("well-conditioned transform");
    let s = Schur::try_new(&p * m * pinv, 1e-15, 10_000).expect("transformed Schur converges");
    s.eigenvalues().expect("complex Schur form is triangular").iter().copied().collect()
}

pub fn sym_eigenvalues(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let mut v: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn connected_within(n: usize, adj: &[Vec<bool>], members: &[usize]) -> bool {
    if members.is_empty() {
        return false;
    }
    let inside: Vec<bool> = (0..n).map(|v| members.contains(&v)).collect();
    let mut seen = vec![false; n];
    let mut stack = vec![members[0]];
    seen[members[0]] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if adj[v][w] && inside[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == members.len()
}

pub fn adjacency(g: &LoopedGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in g.edges() {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    adj
}

/// All nonempty vertex sets inducing a connected subgraph, by filtering all
/// 2^n subsets; sorted lexicographically.
pub fn connected_subsets(g: &LoopedGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let adj = adjacency(g);
    let mut out: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|mask| (0..n).filter(|v| mask >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|m| connected_within(n, &adj, m))
        .collect();
    out.sort();
    out
}

pub fn is_connected(g: &LoopedGraph) -> bool {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    connected_within(g.vertex_count(), &adjacency(g), &all)
}

/// `c·D(G)[U] + s·E A E` built from scratch with `E_u = e^{2πiℓ_u/k}`.
pub fn reduced(g: &LoopedGraph, k: usize, u: &[usize], ell: &[usize], kind: Kind) -> Vec<Vec<Complex64>> {
    let adj = adjacency(g);
    let deg: Vec<f64> = (0..g.vertex_count()).map(|v| adj[v].iter().filter(|&&b| b).count() as f64).collect();
    let (dc, s) = match kind {
        Kind::Adjacency => (0.0, 1.0),
        Kind::Laplacian => (1.0, -1.0),
        Kind::Signless => (1.0, 1.0),
    };
    let e: Vec<Complex64> = ell.iter().map(|&l| Complex64::from_polar(1.0, 2.0 * PI * l as f64 / k as f64)).collect();
    (0..u.len())
        .map(|i| {
            (0..u.len())
                .map(|j| {
                    if i == j {
                        c(dc * deg[u[i]], 0.0)
                    } else if adj[u[i]][u[j]] {
                        s * e[i] * e[j]
                    } else {
                        c(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect()
}

/// Spectrum of the `kind` tensor of `G^{k,k/2}` over every connected subset
/// and every phase vector in `[0, k)^{|U|}` (no sign-class reduction).
pub fn power_spectrum(g: &LoopedGraph, k: usize, kind: Kind) -> Vec<Complex64> {
    let mut out = Vec::new();
    for u in connected_subsets(g) {
        let total = k.pow(u.len() as u32);
        for code in 0..total {
            let ell: Vec<usize> = (0..u.len()).map(|i| code / k.pow(i as u32) % k).collect();
            out.extend(eigenvalues(&reduced(g, k, &u, &ell, kind)));
        }
    }
    out
}

/// Real spectra of the kind matrix of `G°[U]` over connected `U`.
pub fn power_h_spectrum(g: &LoopedGraph, kind: Kind) -> Vec<f64> {
    let mut out = Vec::new();
    for u in connected_subsets(g) {
        let m = reduced(g, 2, &u, &vec![0; u.len()], kind);
        let rows: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|z| z.re).collect()).collect();
        out.extend(sym_eigenvalues(&rows));
    }
    out
}

pub fn max_modulus(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Every element of `a` lies within `tol` of some element of `b`.
pub fn covered(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.iter().all(|z| b.iter().any(|w| (z - w).norm() <= tol))
}

pub fn same_set(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    covered(a, b, tol) && covered(b, a, tol)
}

/// Some subset meets every edge in an odd number of vertices (2^n search).
pub fn brute_odd_bipartite(n: usize, edges: &[Vec<usize>]) -> bool {
    (0u32..1 << n).any(|mask| edges.iter().all(|e| e.iter().filter(|&&v| mask >> v & 1 == 1).count() % 2 == 1))
}

/// Proper 2-coloring by brute force.
pub fn brute_bipartite(g: &LoopedGraph) -> bool {
    let n = g.vertex_count();
    (0u32..1 << n).any(|mask| g.edges().iter().all(|&(a, b)| (mask >> a & 1) != (mask >> b & 1)))
}

/// All connected simple graphs on `n` labelled vertices.
pub fn connected_graphs(n: usize) -> Vec<LoopedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            LoopedGraph::new(n, &edges).unwrap()
        })
        .filter(is_connected)
        .collect()
}
