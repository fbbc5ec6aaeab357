//! Odd-bipartiteness of power hypergraphs over GF(2), compared with
//! bipartiteness of the base graph.

use hyperspec::{generalized_power, LoopedGraph};

fn main() -> hyperspec::Result<()> {
    let graphs = [
        ("C3", LoopedGraph::cycle(3)),
        ("C4", LoopedGraph::cycle(4)),
        ("C5", LoopedGraph::cycle(5)),
        ("P5", LoopedGraph::path(5)),
        ("K4", LoopedGraph::complete(4)),
    ];
    for (name, g) in graphs {
        for k in [4, 6] {
            let p = generalized_power(&g, k, k / 2)?;
            let side = p.hypergraph().is_odd_bipartite()?;
            println!("{name} bipartite={} | {name}^{{{k},{}}} odd-bipartite side: {side:?}", g.is_bipartite()?, k / 2);
        }
    }
    Ok(())
}
