//! Spectra of the adjacency, Laplacian and signless Laplacian tensors of
//! generalized power hypergraphs `G^{k,k/2}`.
//!
//! A power hypergraph is obtained from a simple graph by blowing every vertex
//! up into a `k/2`-set (a *half edge*). Its tensor spectra reduce to spectra of
//! small complex symmetric matrices `D - E A E` built on connected modified
//! induced subgraphs of the base graph, with `E` a diagonal matrix of `k`-th
//! roots of unity. This crate builds those matrices, lifts their eigenvectors
//! back to tensor eigenvectors and certifies diagonal tensor similarities with
//! exact modular arithmetic.
//!
//! Module map:
//!
//! - [`graphs`]: looped simple graphs, modified induced subgraphs, matrices.
//! - [`linalg`]: dense eigensolvers and tolerance-clustered spectrum sets.
//! - [`hypergraphs`]: uniform hypergraphs, generalized powers, odd-bipartiteness.
//! - [`tensors`]: implicit tensor operators, power iteration, eigenvector lifts.
//! - [`reduction`]: phase assignments and assembly of full spectra.
//! - [`gauge`]: modular linear systems for diagonal similarity certificates.
//! - [`cli`]: command implementations behind the `hyperspec` binary.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod cli;
pub mod error;
pub mod gauge;
pub mod gf2;
pub mod graphs;
pub mod hypergraphs;
pub mod io;
pub mod kind;
pub mod linalg;
pub mod reduction;
pub mod tensors;

pub use error::{Error, Result};
pub use graphs::{LoopedGraph, VertexSubset};
pub use hypergraphs::{generalized_power, HalfEdgeMap, Hypergraph, PowerHypergraph};
pub use kind::Kind;
pub use linalg::{ComplexMatrix, EigenPair, RealMatrix, SpectrumSet};
pub use reduction::{PhaseAssignment, ReductionWitness};
pub use tensors::{Gauge, HyperVector, TensorOperator};

pub use num_complex::Complex64;
