//! Builds generalized powers of the triangle and prints their JSON form.

use hyperspec::io::hypergraph_to_json;
use hyperspec::{generalized_power, LoopedGraph, VertexSubset};

fn main() -> hyperspec::Result<()> {
    let c3 = LoopedGraph::cycle(3);

    // s = k/2: every vertex becomes a half edge, no new vertices per edge.
    let half = generalized_power(&c3, 4, 2)?;
    println!("C3^{{4,2}}: {}", hypergraph_to_json(half.hypergraph(), Some(half.half_edges()))?);

    // s = 1 keeps the base vertices and adds k - 2 vertices per edge.
    let thin = generalized_power(&c3, 6, 1)?;
    println!("C3^{{6,1}}: {} vertices, edges {:?}", thin.hypergraph().vertex_count(), thin.hypergraph().edges());

    // Loops of a modified induced subgraph turn into half-edge loops.
    let sub = c3.modified_induced_subgraph(&VertexSubset::new(vec![0, 1]))?;
    let looped = generalized_power(&sub, 4, 2)?;
    println!("G°[{{0,1}}] loops per vertex {:?}", sub.loops());
    println!("its power: edges {:?}, degrees {:?}", looped.hypergraph().edges(), looped.hypergraph().degrees());
    Ok(())
}
