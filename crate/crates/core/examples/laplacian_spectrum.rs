//! Full spectra and H-spectra of the Laplacian and signless Laplacian tensors
//! of C3^{k,k/2}, assembled from reduced matrices.

use hyperspec::reduction::{h_spectrum_power, spectrum_power, SpectrumConfig};
use hyperspec::{Kind, LoopedGraph};

fn main() -> hyperspec::Result<()> {
    let c3 = LoopedGraph::cycle(3);
    let config = SpectrumConfig::default();

    let h = h_spectrum_power(&c3, 4, Kind::Laplacian, &config)?;
    println!("H-spectrum of L(C3^{{4,2}}): {:?}", h.spectrum.real_values(1e-9));

    for k in [4, 6] {
        let l = spectrum_power(&c3, k, Kind::Laplacian, &config)?;
        let q = spectrum_power(&c3, k, Kind::Signless, &config)?;
        println!(
            "k={k}: |Spec L| = {}, |Spec Q| = {}, equal as sets: {}",
            l.spectrum.len(),
            q.spectrum.len(),
            l.spectrum.set_eq(&q.spectrum, 1e-8)
        );
        for entry in l.spectrum.entries().iter().take(6) {
            let w = &entry.witness;
            println!(
                "  {:>9.5}{:+.5}i  from U={:?} l={:?}",
                entry.value.re,
                entry.value.im,
                w.subset.members(),
                w.phase.phases()
            );
        }
    }
    Ok(())
}
