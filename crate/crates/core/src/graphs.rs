//! Simple graphs with per-vertex loop counts.
//!
//! Loops are stored as counts rather than edges. They only ever enter the
//! degree matrix, so `A(G°) = A(G)` while `D(G°)` picks up the loop counts.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RealMatrix;

/// An ordered, duplicate-free set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSubset(Vec<usize>);

impl VertexSubset {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSubset(members)
    }

    pub fn full(n: usize) -> Self {
        VertexSubset((0..n).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Position of `v` inside the subset, if present.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }
}

impl From<Vec<usize>> for VertexSubset {
    fn from(v: Vec<usize>) -> Self {
        VertexSubset::new(v)
    }
}

/// Simple undirected graph whose vertices may carry loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    loops: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

impl LoopedGraph {
    /// Builds a loop-free graph. Edge endpoints are normalized to `(min, max)`.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::with_loops(vertex_count, edges, vec![0; vertex_count])
    }

    pub fn with_loops(vertex_count: usize, edges: &[(usize, usize)], loops: Vec<usize>) -> Result<Self> {
        if loops.len() != vertex_count {
            return Err(Error::DimensionMismatch { expected: vertex_count, got: loops.len() });
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: v, count: vertex_count });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        for w in normalized.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(vec![w[0].0, w[0].1]));
            }
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b) in &normalized {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(LoopedGraph { vertex_count, edges: normalized, loops, adjacency })
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges).expect("cycle needs at least 3 vertices")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Self::new(n, &edges).expect("valid complete graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Simple edges as sorted `(min, max)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|&c| c > 0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count })
        } else {
            Ok(())
        }
    }

    /// Simple degree plus loop count; a loop contributes one.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len() + self.loops[v])
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count).map(|v| self.adjacency[v].len() + self.loops[v]).collect()
    }

    /// Connectivity under simple edges; loops are ignored.
    pub fn is_connected(&self) -> Result<bool> {
        if self.vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(self.component_of(0).iter().all(|&seen| seen))
    }

    fn component_of(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Two-colorability; refuses graphs with loops.
    pub fn is_bipartite(&self) -> Result<bool> {
        self.bipartition().map(|c| c.is_some())
    }

    /// A proper 2-coloring, if one exists. Colors are `false`/`true`, with the
    /// lowest vertex of every component colored `false`.
    pub fn bipartition(&self) -> Result<Option<Vec<bool>>> {
        if self.has_loops() {
            return Err(Error::LoopsPresent);
        }
        let mut color: Vec<Option<bool>> = vec![None; self.vertex_count];
        for start in 0..self.vertex_count {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &w in &self.adjacency[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => return Ok(None),
                        _ => {}
                    }
                }
            }
        }
        Ok(Some(color.into_iter().map(|c| c.unwrap()).collect()))
    }

    /// Whether the induced subgraph on `subset` is connected.
    pub fn induces_connected(&self, subset: &VertexSubset) -> bool {
        let members = subset.members();
        let Some(&first) = members.first() else {
            return false;
        };
        let mut seen = vec![false; members.len()];
        seen[0] = true;
        let mut stack = vec![first];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if let Some(p) = subset.position(w) {
                    if !seen[p] {
                        seen[p] = true;
                        reached += 1;
                        stack.push(w);
                    }
                }
            }
        }
        reached == members.len()
    }

    /// `G°[U]`: the induced subgraph on `U` plus `d_v(G) - d_v(G[U])` loops on
    /// every `v ∈ U`, relabeled `0..|U|` in subset order. Degrees are preserved.
    pub fn modified_induced_subgraph(&self, subset: &VertexSubset) -> Result<LoopedGraph> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &v in subset.members() {
            self.check_vertex(v)?;
        }
        let mut edges = Vec::new();
        for &(a, b) in &self.edges {
            if let (Some(pa), Some(pb)) = (subset.position(a), subset.position(b)) {
                edges.push((pa, pb));
            }
        }
        let mut inner_degree = vec![0usize; subset.len()];
        for &(a, b) in &edges {
            inner_degree[a] += 1;
            inner_degree[b] += 1;
        }
        let loops = subset
            .members()
            .iter()
            .zip(&inner_degree)
            .map(|(&v, &d)| self.adjacency[v].len() + self.loops[v] - d)
            .collect();
        LoopedGraph::with_loops(subset.len(), &edges, loops)
    }

    /// Adjacency matrix; loops never appear on its diagonal.
    pub fn adjacency_matrix(&self) -> RealMatrix {
        let n = self.vertex_count;
        let mut m = RealMatrix::zeros(n, n);
        for &(a, b) in &self.edges {
            m[(a, b)] = 1.0;
            m[(b, a)] = 1.0;
        }
        m
    }

    /// `D - A`.
    pub fn laplacian_matrix(&self) -> RealMatrix {
        self.degree_plus(-1.0)
    }

    /// `D + A`.
    pub fn signless_laplacian_matrix(&self) -> RealMatrix {
        self.degree_plus(1.0)
    }

    fn degree_plus(&self, sign: f64) -> RealMatrix {
        let mut m = self.adjacency_matrix();
        for v in m.data_mut() {
            *v *= sign;
        }
        for (v, d) in self.degrees().into_iter().enumerate() {
            m[(v, v)] = d as f64;
        }
        m
    }

    /// Every nonempty `U` with `G[U]` connected and `|U| <= max_size`, each
    /// exactly once, in lexicographic order of the sorted member lists.
    pub fn enumerate_connected_subsets(&self, max_size: usize) -> ConnectedSubsets {
        let mut found = Vec::new();
        if max_size > 0 {
            for root in 0..self.vertex_count {
                let ext: Vec<usize> = self.adjacency[root].iter().copied().filter(|&w| w > root).collect();
                let mut sub = vec![root];
                self.extend_subset(root, &mut sub, ext, max_size, &mut found);
            }
        }
        found.sort();
        ConnectedSubsets { inner: found.into_iter() }
    }

    // Neighbor expansion rooted at the minimum vertex; each connected set is
    // reached along exactly one branch.
    fn extend_subset(
        &self,
        root: usize,
        sub: &mut Vec<usize>,
        mut ext: Vec<usize>,
        max_size: usize,
        out: &mut Vec<VertexSubset>,
    ) {
        out.push(VertexSubset::new(sub.clone()));
        if sub.len() == max_size {
            return;
        }
        while let Some(w) = ext.pop() {
            let mut next_ext = ext.clone();
            for &u in &self.adjacency[w] {
                if u <= root || sub.contains(&u) || ext.contains(&u) || u == w {
                    continue;
                }
                if sub.iter().any(|&s| self.is_adjacent(s, u)) {
                    continue;
                }
                next_ext.push(u);
            }
            sub.push(w);
            self.extend_subset(root, sub, next_ext, max_size, out);
            sub.pop();
        }
    }
}

/// Iterator over connected vertex subsets in canonical order.
#[derive(Debug)]
pub struct ConnectedSubsets {
    inner: std::vec::IntoIter<VertexSubset>,
}

impl Iterator for ConnectedSubsets {
    type Item = VertexSubset;

    fn next(&mut self) -> Option<VertexSubset> {
        self.inner.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for ConnectedSubsets {}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_disjoint_edges() -> LoopedGraph {
        LoopedGraph::new(4, &[(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn degrees_count_loops() {
        let c3 = LoopedGraph::cycle(3);
        assert!((0..3).all(|v| c3.degree(v).unwrap() == 2));
        let looped = LoopedGraph::with_loops(3, c3.edges(), vec![1, 0, 0]).unwrap();
        assert_eq!(looped.degree(0).unwrap(), 3);
        let single = LoopedGraph::new(1, &[]).unwrap();
        assert_eq!(single.degree(0).unwrap(), 0);
        assert!(matches!(c3.degree(3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(LoopedGraph::new(2, &[(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(LoopedGraph::new(2, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(_))));
        assert!(matches!(LoopedGraph::new(2, &[(0, 2)]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn connectivity() {
        assert!(LoopedGraph::cycle(3).is_connected().unwrap());
        assert!(!two_disjoint_edges().is_connected().unwrap());
        let lone = LoopedGraph::with_loops(1, &[], vec![1]).unwrap();
        assert!(lone.is_connected().unwrap());
        assert_eq!(LoopedGraph::new(0, &[]).unwrap().is_connected(), Err(Error::EmptyGraph));
    }

    #[test]
    fn bipartiteness() {
        assert!(LoopedGraph::cycle(4).is_bipartite().unwrap());
        assert!(!LoopedGraph::cycle(3).is_bipartite().unwrap());
        assert!(!LoopedGraph::cycle(5).is_bipartite().unwrap());
        let looped = LoopedGraph::with_loops(2, &[(0, 1)], vec![1, 0]).unwrap();
        assert_eq!(looped.is_bipartite(), Err(Error::LoopsPresent));
    }

    #[test]
    fn modified_induced_subgraph_examples() {
        let c3 = LoopedGraph::cycle(3);
        let pair = c3.modified_induced_subgraph(&VertexSubset::new(vec![0, 1])).unwrap();
        assert_eq!(pair.edges(), &[(0, 1)]);
        assert_eq!(pair.loops(), &[1, 1]);

        let single = c3.modified_induced_subgraph(&VertexSubset::new(vec![0])).unwrap();
        assert_eq!(single.vertex_count(), 1);
        assert_eq!(single.loops(), &[2]);

        let all = c3.modified_induced_subgraph(&VertexSubset::full(3)).unwrap();
        assert_eq!(all, c3);

        assert_eq!(c3.modified_induced_subgraph(&VertexSubset::new(vec![])), Err(Error::EmptySubset));
    }

    #[test]
    fn matrices_of_modified_subgraph() {
        let c3 = LoopedGraph::cycle(3);
        let pair = c3.modified_induced_subgraph(&VertexSubset::new(vec![0, 1])).unwrap();
        let l = pair.laplacian_matrix();
        assert_eq!(l.data(), &[2.0, -1.0, -1.0, 2.0]);
        let a = pair.adjacency_matrix();
        assert_eq!(a[(0, 0)], 0.0);
        let q = c3.signless_laplacian_matrix();
        assert_eq!(q[(0, 0)], 2.0);
        assert_eq!(q[(0, 1)], 1.0);
    }

    #[test]
    fn connected_subset_counts() {
        let c3 = LoopedGraph::cycle(3);
        let subsets: Vec<_> = c3.enumerate_connected_subsets(3).collect();
        assert_eq!(subsets.len(), 7);
        assert_eq!(subsets[0].members(), &[0]);
        assert_eq!(subsets[1].members(), &[0, 1]);
        assert_eq!(subsets[2].members(), &[0, 1, 2]);

        let p3 = LoopedGraph::path(3);
        let subsets: Vec<_> = p3.enumerate_connected_subsets(3).collect();
        assert_eq!(subsets.len(), 6);
        assert!(!subsets.contains(&VertexSubset::new(vec![0, 2])));

        let k4 = LoopedGraph::complete(4);
        assert_eq!(k4.enumerate_connected_subsets(1).count(), 4);
        assert_eq!(k4.enumerate_connected_subsets(0).count(), 0);
    }
}
