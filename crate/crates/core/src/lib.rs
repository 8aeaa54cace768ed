//! # sgcurv
//!
//! Repelling-Laplacian toolkit for positive-connected signed graphs.
//!
//! A signed graph carries a `+1`/`-1` sign on every weighted edge. Splitting
//! the Laplacian by sign, `L_eps = L+ - eps L-` stays positive semidefinite
//! with a one-dimensional kernel for every `eps` below a threshold `eps0`
//! (the consensus index), and its pseudoinverse induces a repelling cost
//! `Omega` that generalizes effective resistance. On top of that cost the
//! crate computes a simplex embedding with its circumsphere, node and edge
//! curvatures, exact Wasserstein-1 transport with `Omega` as ground cost, and
//! verifiers for the spectral inequalities these objects satisfy.
//!
//! Modules map onto the pipeline:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | signed-graph model, parsing, balance, switching, blocks |
//! | [`spectral`] | Jacobi eigensolver, LU solves, pseudoinverse, `exp(-Mt)` |
//! | [`repelling`] | consensus index, cost matrix `Omega`, simplex, resistance |
//! | [`curvature`] | node/edge curvature, heat limit, lazy-walk curvature |
//! | [`transport`] | exact Wasserstein-1 via the transportation simplex |
//! | [`bounds`] | inequality checkers and the repelling consensus dynamics |
//! | [`batch`] | grid sweeps and corpus runs (rayon under the `parallel` feature) |
//! | [`verify`] | reproduction fixtures, random corpora, independent oracles |
//!
//! The `parallel` feature (default) evaluates sweeps, per-edge curvature, and
//! corpus batches on rayon; disabling it yields identical outputs, computed
//! sequentially.

// index loops over matrix entries are the house style here
#![allow(clippy::needless_range_loop)]

pub use ndarray;

pub mod batch;
pub mod bounds;
pub mod curvature;
pub mod error;
pub mod graph;
pub mod repelling;
pub mod spectral;
pub mod tol;
pub mod transport;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, BalanceVerdict, Edge, Sign, SignedGraph, SubgraphFilter};
pub use repelling::{ConsensusIndex, ConsensusValue, RepellingAnalysis, SimplexData};
pub use spectral::{laplacian, LaplacianKind, SpectralDecomposition, SymMatrix};
