//! Compares the spectral radii of the Laplacian and signless Laplacian
//! tensors of powers of the triangle as k grows.
//!
//! For k divisible by 4 the two radii agree; for k = 2 mod 4 the Laplacian
//! radius falls short, and the uniform phase e^{2πi l/(2l+1)} on k = 4l + 2
//! closes the gap as l grows.

use hyperspec::linalg::{spectral_radius, ComplexEigConfig};
use hyperspec::reduction::{lambda_max_L, rho_power, special_k2mod4_matrix, SpectrumConfig};
use hyperspec::{Kind, LoopedGraph};

fn main() -> hyperspec::Result<()> {
    let c3 = LoopedGraph::cycle(3);
    let config = SpectrumConfig::default();
    println!("{:>3} {:>10} {:>10} {:>10}  witness", "k", "lmax(L)", "rho(L)", "rho(Q)");
    for k in (4..=14).step_by(2) {
        let rl = rho_power(&c3, k, Kind::Laplacian, &config)?;
        let rq = rho_power(&c3, k, Kind::Signless, &config)?;
        println!(
            "{k:>3} {:>10.7} {:>10.7} {:>10.7}  U={:?} l={:?} ({} ties)",
            lambda_max_L(&c3, k)?,
            rl.value,
            rq.value,
            rl.witness.subset.members(),
            rl.witness.phase.phases(),
            rl.ties.len()
        );
    }

    println!("\nuniform phase on k = 4l + 2:");
    for k in [6, 10, 14, 18, 22, 26] {
        let rho = spectral_radius(&special_k2mod4_matrix(&c3, k)?, &ComplexEigConfig::default())?;
        println!("  k={k:<3} rho={rho:.7}  gap to 4 = {:.7}", 4.0 - rho);
    }
    Ok(())
}
