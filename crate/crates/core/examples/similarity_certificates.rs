//! Searches for root-of-unity diagonal similarities between L and Q.

use hyperspec::gauge::{certificate_report, default_moduli};
use hyperspec::tensors::verify_diagonal_similarity;
use hyperspec::{generalized_power, Gauge, Kind, LoopedGraph};

fn main() -> hyperspec::Result<()> {
    for (name, g) in [("C3", LoopedGraph::cycle(3)), ("C4", LoopedGraph::cycle(4)), ("C5", LoopedGraph::cycle(5))] {
        for k in [4, 6, 8] {
            let p = generalized_power(&g, k, k / 2)?;
            let report = certificate_report(p.hypergraph(), &default_moduli(k))?;
            println!("{name}^{{{k},{}}}: {}", k / 2, report.summary());
        }
    }

    // The quarter-turn gauge on anchors, checked exactly.
    let p = generalized_power(&LoopedGraph::cycle(3), 8, 4)?;
    let gauge = Gauge::anchor_quarter_turn(p.half_edges(), p.hypergraph().vertex_count(), 8)?;
    println!("anchor gauge JSON: {}", serde_json::to_string(&gauge)?);
    println!(
        "L = Γ^-(k-1) Q Γ: {}, -A = Γ^-(k-1) A Γ: {}",
        verify_diagonal_similarity(p.hypergraph(), Kind::Signless, Kind::Laplacian, 1, &gauge)?,
        verify_diagonal_similarity(p.hypergraph(), Kind::Adjacency, Kind::Adjacency, -1, &gauge)?
    );
    Ok(())
}
