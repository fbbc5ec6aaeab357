//! Uniform hypergraphs, generalized powers and odd-bipartiteness.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Gf2System;
use crate::graphs::LoopedGraph;

/// A `k`-uniform hypergraph, possibly carrying loops (edges with fewer than
/// `k` vertices). Edges are sorted vertex lists kept in lexicographic order.
/// Loop edges may repeat; each copy adds one to the degree of its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    rank: usize,
    edges: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, rank: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidParameter(format!("rank must be at least 2, got {rank}")));
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for mut edge in edges {
            edge.sort_unstable();
            if let Some(&v) = edge.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange { vertex: v, count: vertex_count });
            }
            if edge.windows(2).any(|w| w[0] == w[1]) || edge.is_empty() || edge.len() > rank {
                return Err(Error::InvalidParameter(format!("edge {edge:?} is not a set of 1..={rank} vertices")));
            }
            canonical.push(edge);
        }
        canonical.sort();
        for w in canonical.windows(2) {
            if w[0] == w[1] && w[0].len() == rank {
                return Err(Error::DuplicateEdge(w[0].clone()));
            }
        }
        Ok(Hypergraph { vertex_count, rank, edges: canonical, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::DimensionMismatch { expected: self.vertex_count, got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// The uniformity `k`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All edges, loops included.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Edges of full size `k`.
    pub fn uniform_edges(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.edges.iter().filter(move |e| e.len() == self.rank).map(Vec::as_slice)
    }

    pub fn loop_edges(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.edges.iter().filter(move |e| e.len() < self.rank).map(Vec::as_slice)
    }

    pub fn has_loops(&self) -> bool {
        self.loop_edges().next().is_some()
    }

    /// Number of edges (loops included) containing `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count });
        }
        Ok(self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Connectivity through full-size edges.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let mut incident = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate().filter(|(_, e)| e.len() == self.rank) {
            for &v in e {
                incident[v].push(i);
            }
        }
        let mut seen = vec![false; self.vertex_count];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &i in &incident[v] {
                for &w in &self.edges[i] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A set `V1` meeting every edge in an odd number of vertices, found by
    /// GF(2) elimination with free variables zeroed. For even `k` the
    /// complement then meets every edge oddly as well.
    pub fn is_odd_bipartite(&self) -> Result<Option<Vec<usize>>> {
        if self.rank % 2 == 1 {
            return Err(Error::InvalidParameter(format!("odd-bipartiteness needs even rank, got {}", self.rank)));
        }
        if self.has_loops() {
            return Err(Error::LoopsPresent);
        }
        Ok(self.odd_transversal_system().solve().map(|x| (0..self.vertex_count).filter(|&v| x[v]).collect()))
    }

    pub(crate) fn odd_transversal_system(&self) -> Gf2System {
        let mut sys = Gf2System::new(self.vertex_count);
        for e in self.uniform_edges() {
            sys.push_equation(e, true);
        }
        sys
    }

    pub fn to_json(&self, half_edges: Option<&HalfEdgeMap>) -> HypergraphJson {
        HypergraphJson {
            n: self.vertex_count,
            k: self.rank,
            edges: self.edges.clone(),
            half_edges: half_edges.map(|h| h.half_edges.iter().cloned().enumerate().collect()),
        }
    }

    pub fn from_json(json: &HypergraphJson) -> Result<Self> {
        Hypergraph::new(json.n, json.k, json.edges.clone())
    }
}

/// On-disk hypergraph form. `half_edges` maps base vertex ids to members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_edges: Option<BTreeMap<usize, Vec<usize>>>,
}

impl HypergraphJson {
    /// Half edges indexed by base vertex, when present and well formed.
    pub fn half_edge_map(&self) -> Result<Option<HalfEdgeMap>> {
        let Some(map) = &self.half_edges else {
            return Ok(None);
        };
        let mut half_edges = vec![Vec::new(); map.len()];
        for (&u, members) in map {
            if u >= half_edges.len() {
                return Err(Error::Parse(format!("half-edge key {u} out of range")));
            }
            let mut members = members.clone();
            members.sort_unstable();
            half_edges[u] = members;
        }
        Ok(Some(HalfEdgeMap { half_edges, edge_vertices: Vec::new() }))
    }
}

/// Provenance of power-hypergraph vertices: the blown-up set of every base
/// vertex and the extra vertices of every base edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfEdgeMap {
    half_edges: Vec<Vec<usize>>,
    edge_vertices: Vec<Vec<usize>>,
}

impl HalfEdgeMap {
    /// Members of the half edge of base vertex `u`, ascending.
    pub fn half_edge(&self, u: usize) -> &[usize] {
        &self.half_edges[u]
    }

    /// The lowest-index member, which stands in for `u` itself.
    pub fn anchor(&self, u: usize) -> usize {
        self.half_edges[u][0]
    }

    pub fn base_count(&self) -> usize {
        self.half_edges.len()
    }

    /// Added vertices of the `j`-th base edge (empty when `s = k/2`).
    pub fn edge_vertices(&self, j: usize) -> &[usize] {
        self.edge_vertices.get(j).map_or(&[], Vec::as_slice)
    }

    pub fn anchors(&self) -> impl Iterator<Item = usize> + '_ {
        self.half_edges.iter().map(|h| h[0])
    }
}

/// A generalized power `G^{k,s}` together with its construction data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerHypergraph {
    base: LoopedGraph,
    k: usize,
    s: usize,
    hypergraph: Hypergraph,
    map: HalfEdgeMap,
}

impl PowerHypergraph {
    pub fn base(&self) -> &LoopedGraph {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn half_edges(&self) -> &HalfEdgeMap {
        &self.map
    }

    pub fn into_parts(self) -> (Hypergraph, HalfEdgeMap) {
        (self.hypergraph, self.map)
    }
}

/// `G^{k,s}`: every vertex becomes an `s`-set, every edge `{u, v}` the
/// `k`-set `u ∪ v ∪ e` with `k − 2s` new vertices. For `s = k/2` a loop on
/// `u` becomes the half edge of `u` used as a loop edge.
///
/// Vertex numbering: base vertex `u` owns `u·s .. u·s + s`; base edge `j` (in
/// sorted edge order) owns the next `k − 2s` indices after all half edges.
pub fn generalized_power(g: &LoopedGraph, k: usize, s: usize) -> Result<PowerHypergraph> {
    if s == 0 || 2 * s > k {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= k/2, got k={k}, s={s}")));
    }
    if k < 3 {
        return Err(Error::InvalidParameter(format!("need k >= 3, got {k}")));
    }
    let half_power = 2 * s == k;
    if half_power && k < 4 {
        return Err(Error::InvalidParameter(format!("need even k >= 4 for s=k/2, got {k}")));
    }
    if g.has_loops() && !half_power {
        return Err(Error::InvalidParameter("loops are only supported for s=k/2".into()));
    }
    let n = g.vertex_count();
    let core = k - 2 * s;
    let half_edges: Vec<Vec<usize>> = (0..n).map(|u| (u * s..u * s + s).collect()).collect();
    let edge_vertices: Vec<Vec<usize>> =
        (0..g.edges().len()).map(|j| (n * s + j * core..n * s + (j + 1) * core).collect()).collect();
    let vertex_count = n * s + g.edges().len() * core;

    let mut edges = Vec::with_capacity(g.edges().len());
    for (j, &(a, b)) in g.edges().iter().enumerate() {
        let mut e = half_edges[a].clone();
        e.extend_from_slice(&half_edges[b]);
        e.extend_from_slice(&edge_vertices[j]);
        edges.push(e);
    }
    for (u, &count) in g.loops().iter().enumerate() {
        for _ in 0..count {
            edges.push(half_edges[u].clone());
        }
    }
    let hypergraph = Hypergraph::new(vertex_count, k, edges)?;
    Ok(PowerHypergraph { base: g.clone(), k, s, hypergraph, map: HalfEdgeMap { half_edges, edge_vertices } })
}
