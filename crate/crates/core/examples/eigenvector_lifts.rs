//! Lifts eigenvectors of reduced matrices to tensor eigenvectors of the power
//! hypergraph and checks the tensor residual.

use hyperspec::linalg::{eig_real_symmetric, SymmetricEigConfig};
use hyperspec::reduction::{spectrum_power, witness_eigenpair, SpectrumConfig};
use hyperspec::tensors::{
    eig_residual, lift_phase, lift_real, nqz_power_iteration, rotate_signless_to_laplacian, NqzConfig,
};
use hyperspec::{generalized_power, Complex64, Kind, LoopedGraph, TensorOperator, VertexSubset};

fn main() -> hyperspec::Result<()> {
    let c3 = LoopedGraph::cycle(3);
    let power = generalized_power(&c3, 6, 3)?;
    let l = TensorOperator::new(power.hypergraph(), Kind::Laplacian);

    // Real eigenpairs of L(G°[U]) give H-eigenvectors.
    let u = VertexSubset::new(vec![0, 1]);
    let sub = c3.modified_induced_subgraph(&u)?;
    for pair in eig_real_symmetric(&sub.laplacian_matrix(), &SymmetricEigConfig::default())? {
        let x = lift_real(&power, Kind::Laplacian, &u, pair.value, &pair.vector)?;
        println!(
            "real lift  lambda={:.4}  residual={:.1e}",
            pair.value,
            eig_residual(&l, Complex64::new(pair.value, 0.0), &x)?
        );
    }

    // Every eigenvalue of the full enumeration comes with a witness to lift.
    let spectrum = spectrum_power(&c3, 6, Kind::Laplacian, &SpectrumConfig::default())?;
    let mut worst = 0.0f64;
    for entry in spectrum.spectrum.entries() {
        let w = &entry.witness;
        let pair = witness_eigenpair(&c3, 6, w)?;
        let x = lift_phase(&power, Kind::Laplacian, &w.subset, &w.phase, pair.value, &pair.vector)?;
        worst = worst.max(eig_residual(&l, pair.value, &x)?);
    }
    println!("phase lifts of {} eigenvalues: worst residual {worst:.1e}", spectrum.spectrum.len());

    // For 4 | k, multiplying anchors by i turns a Q eigenvector into an L one.
    let p4 = generalized_power(&c3, 4, 2)?;
    let perron = nqz_power_iteration(&TensorOperator::new(p4.hypergraph(), Kind::Signless), &NqzConfig::default())?;
    let y = rotate_signless_to_laplacian(p4.hypergraph(), p4.half_edges(), &perron.hypervector())?;
    let l4 = TensorOperator::new(p4.hypergraph(), Kind::Laplacian);
    println!(
        "rotated Perron vector of Q(C3^{{4,2}}): L-residual at {:.4} is {:.1e}",
        perron.value,
        eig_residual(&l4, Complex64::new(perron.value, 0.0), &y)?
    );
    Ok(())
}
