//! Continuous-time quantum walks on simple graphs.
//!
//! The walk on a graph `X` with adjacency matrix `A` is governed by the
//! transition operator `H(t) = exp(iAt)`. Perfect state transfer (PST) from
//! `u` to `v` happens at time `tau` when `|H(tau)[u][v]| = 1`.
//!
//! This crate provides:
//!
//! * [`graph`]: graph construction, graph6 / JSON input, vertex deletion and
//!   Cartesian products.
//! * [`spectral`]: eigendecomposition grouped into spectral idempotents,
//!   `H(t)`, eigenvalue supports, the eigenvalue gap bound and exact
//!   characteristic polynomials.
//! * [`pst`]: fidelity, numeric PST / periodicity search, the ratio
//!   condition, support classification and the aggregated necessary
//!   conditions for PST.
//! * [`partition`]: color refinement, `Delta_u`, quotient matrices and a
//!   brute-force automorphism search for small graphs.
//! * [`walk`]: exact walk matrices, controllability, Gram-matrix
//!   cospectrality and the transfer similarity `W_v W_u^{-1}`.
//! * [`report`]: JSON reports and the parallel catalog scanner used by the
//!   `qwalk` binary.
//!
//! Numeric PST search is evidence, never a proof of existence or absence.

pub mod config;
pub mod error;
pub mod exact;
pub mod graph;
pub mod par;
pub mod partition;
pub mod pst;
pub mod report;
pub mod spectral;
pub mod walk;

pub use config::AnalysisConfig;
pub use error::{Error, Result};
pub use graph::Graph;
pub use partition::Partition;
pub use spectral::SpectralDecomposition;
