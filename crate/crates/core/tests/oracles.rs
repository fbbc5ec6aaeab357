mod common;

use common::*;
use hyperspec::linalg::{eig_complex_dense, eig_real_symmetric, spectral_radius, ComplexEigConfig, SymmetricEigConfig};
use hyperspec::reduction::{h_spectrum_power, rho_power, spectrum_power, SpectrumConfig};
use hyperspec::{ComplexMatrix, Kind, LoopedGraph, RealMatrix};

fn graphs() -> Vec<(&'static str, LoopedGraph)> {
    vec![
        ("C3", LoopedGraph::cycle(3)),
        ("P3", LoopedGraph::path(3)),
        ("C4", LoopedGraph::cycle(4)),
        ("K4", LoopedGraph::complete(4)),
        ("paw", LoopedGraph::new(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()),
    ]
}

#[test]
fn connected_subsets_match_brute_force() {
    for (name, g) in graphs() {
        let ours: Vec<Vec<usize>> =
            g.enumerate_connected_subsets(g.vertex_count()).map(|u| u.members().to_vec()).collect();
        assert_eq!(ours, connected_subsets(&g), "{name}");
    }
}

#[test]
fn dense_solvers_match_nalgebra() {
    let m = RealMatrix::from_rows(&[vec![2.0, -1.0, 0.5], vec![-1.0, 3.0, 0.0], vec![0.5, 0.0, -1.0]]);
    let ours: Vec<f64> =
        eig_real_symmetric(&m, &SymmetricEigConfig::default()).unwrap().iter().map(|p| p.value).collect();
    let rows: Vec<Vec<f64>> = (0..3).map(|i| m.row(i).to_vec()).collect();
    for (a, b) in ours.iter().zip(sym_eigenvalues(&rows)) {
        assert!((a - b).abs() < 1e-12);
    }

    let rows = vec![
        vec![c(1.0, 0.5), c(0.0, 2.0), c(-1.0, 0.0)],
        vec![c(0.3, 0.0), c(-2.0, 1.0), c(0.0, 0.0)],
        vec![c(0.0, -1.0), c(1.0, 1.0), c(0.5, -0.5)],
    ];
    let m = ComplexMatrix::from_rows(&rows);
    let ours = eig_complex_dense(&m, &ComplexEigConfig::default()).unwrap().values();
    assert!(same_set(&ours, &eigenvalues(&rows), 1e-9));
}

#[test]
fn full_spectra_match_unreduced_enumeration() {
    let config = SpectrumConfig::default();
    for (name, g) in graphs() {
        for k in [4, 6] {
            for kind in Kind::ALL {
                let ours = spectrum_power(&g, k, kind, &config).unwrap();
                assert!(ours.complete);
                let oracle = power_spectrum(&g, k, kind);
                assert!(same_set(&ours.spectrum.values(), &oracle, 1e-8), "{name} k={k} {kind}");
                let rho = rho_power(&g, k, kind, &config).unwrap();
                assert!((rho.value - max_modulus(&oracle)).abs() < 1e-9, "{name} k={k} {kind}");
            }
        }
    }
}

#[test]
fn h_spectra_match_principal_submatrices() {
    for (name, g) in graphs() {
        for kind in Kind::ALL {
            let ours = h_spectrum_power(&g, 4, kind, &SpectrumConfig::default()).unwrap();
            let oracle: Vec<_> = power_h_spectrum(&g, kind).into_iter().map(|x| c(x, 0.0)).collect();
            assert!(same_set(&ours.spectrum.values(), &oracle, 1e-9), "{name} {kind}");
        }
    }
}

#[test]
fn witnesses_reproduce_their_eigenvalue() {
    let g = LoopedGraph::cycle(4);
    let spectrum = spectrum_power(&g, 6, Kind::Laplacian, &SpectrumConfig::default()).unwrap();
    for entry in spectrum.spectrum.entries() {
        let w = &entry.witness;
        let local = eigenvalues(&reduced(&g, 6, w.subset.members(), w.phase.phases(), w.kind));
        assert!(local.iter().any(|z| (z - w.eigenvalue).norm() < 1e-9));
        assert!((entry.value - w.eigenvalue).norm() < 1e-8);
    }
}

#[test]
fn uniform_phase_radius_closed_form() {
    let m = ComplexMatrix::from_rows(&reduced(&LoopedGraph::cycle(3), 6, &[0, 1, 2], &[1, 1, 1], Kind::Laplacian));
    let rho = spectral_radius(&m, &ComplexEigConfig::default()).unwrap();
    assert!((rho - 2.0 * 3f64.sqrt()).abs() < 1e-12);
}
