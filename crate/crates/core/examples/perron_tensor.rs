//! Tensor power iteration on the power hypergraph against the matrix Perron
//! root of the base graph.

use hyperspec::linalg::{power_iteration_nonneg, PerronConfig};
use hyperspec::tensors::{nqz_power_iteration, NqzConfig};
use hyperspec::{generalized_power, Kind, LoopedGraph, TensorOperator};

fn main() -> hyperspec::Result<()> {
    let graphs = [("C3", LoopedGraph::cycle(3)), ("P4", LoopedGraph::path(4)), ("K4", LoopedGraph::complete(4))];
    for (name, g) in graphs {
        let q = power_iteration_nonneg(&g.signless_laplacian_matrix(), &PerronConfig::default())?;
        let a = power_iteration_nonneg(&g.adjacency_matrix(), &PerronConfig::default())?;
        for k in [4, 6] {
            let p = generalized_power(&g, k, k / 2)?;
            let tq = nqz_power_iteration(&TensorOperator::new(p.hypergraph(), Kind::Signless), &NqzConfig::default())?;
            let ta = nqz_power_iteration(&TensorOperator::new(p.hypergraph(), Kind::Adjacency), &NqzConfig::default())?;
            println!(
                "{name} k={k}: rho_Q tensor {:.8} matrix {:.8} ({} its); rho_A tensor {:.8} matrix {:.8}",
                tq.value, q.value, tq.iterations, ta.value, a.value
            );
        }
    }
    Ok(())
}
