//! Edge-list and hypergraph JSON files.
//!
//! Edge lists start with a header line `n m` followed by `m` lines `u v`
//! with 0-based endpoints. Blank lines and lines starting with `#` are
//! skipped. Loops and repeated edges are rejected.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graphs::LoopedGraph;
use crate::hypergraphs::{HalfEdgeMap, Hypergraph, HypergraphJson};

fn parse_usize(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::Parse(format!("line {line}: missing {what}")))?;
    token.parse().map_err(|_| Error::Parse(format!("line {line}: bad {what} {token:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<LoopedGraph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let mut tokens = header.split_whitespace();
    let n = parse_usize(tokens.next(), hl, "vertex count")?;
    let m = parse_usize(tokens.next(), hl, "edge count")?;
    if tokens.next().is_some() {
        return Err(Error::Parse(format!("line {hl}: header must be \"n m\"")));
    }
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let mut tokens = line.split_whitespace();
        let u = parse_usize(tokens.next(), ln, "endpoint")?;
        let v = parse_usize(tokens.next(), ln, "endpoint")?;
        if tokens.next().is_some() {
            return Err(Error::Parse(format!("line {ln}: expected two endpoints")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("header declares {m} edges, found {}", edges.len())));
    }
    LoopedGraph::new(n, &edges)
}

pub fn format_edge_list(g: &LoopedGraph) -> Result<String> {
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    let mut out = format!("{} {}\n", g.vertex_count(), g.edges().len());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    Ok(out)
}

pub fn read_edge_list(path: &Path) -> Result<LoopedGraph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn write_edge_list(path: &Path, g: &LoopedGraph) -> Result<()> {
    std::fs::write(path, format_edge_list(g)?)?;
    Ok(())
}

/// Canonical compact JSON of a hypergraph, with half edges when given.
pub fn hypergraph_to_json(h: &Hypergraph, half_edges: Option<&HalfEdgeMap>) -> Result<String> {
    Ok(serde_json::to_string(&h.to_json(half_edges))?)
}

pub fn hypergraph_from_json(text: &str) -> Result<(Hypergraph, Option<HalfEdgeMap>)> {
    let json: HypergraphJson = serde_json::from_str(text)?;
    let h = Hypergraph::from_json(&json)?;
    let map = json.half_edge_map()?;
    if let Some(map) = &map {
        let covered: usize = (0..map.base_count()).map(|u| map.half_edge(u).len()).sum();
        if (0..map.base_count()).any(|u| map.half_edge(u).iter().any(|&v| v >= h.vertex_count()))
            || covered > h.vertex_count()
        {
            return Err(Error::Parse("half edges reference vertices outside the hypergraph".into()));
        }
    }
    Ok((h, map))
}

pub fn read_hypergraph(path: &Path) -> Result<(Hypergraph, Option<HalfEdgeMap>)> {
    hypergraph_from_json(&std::fs::read_to_string(path)?)
}
