//! Quasi-isometries between finite graphs with variable edge lengths.
//!
//! The crate builds vertex-split graph pairs `(G, H, φ)`, checks
//! `(L, C)`-quasi-isometry parameters exactly, turns the light/heavy case
//! analysis for split pairs into a certificate-producing refutation
//! procedure, and searches for edge weightings that would make a fixed map a
//! `(1, C)`-quasi-isometry.
//!
//! Modules:
//! - [`graph`]: graphs, weightings, paths, distances, girth, colourings.
//! - [`constructions`]: vertex split, subdivision, pendant paths, generators.
//! - [`oriented`]: directed / alternating path search in oriented graphs.
//! - [`qi`]: quasi-isometry verification.
//! - [`witness`]: refutation certificates for split pairs.
//! - [`solver`]: weight feasibility (grid oracle and LP constraint generation).
//! - [`io`]: instance files and edge-list readers.

pub mod constructions;
pub mod error;
pub mod graph;
pub mod io;
pub mod oriented;
pub mod par;
pub mod qi;
pub mod solver;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{DistanceMatrix, EdgeWeighting, Graph, Path};
pub use par::Execution;

/// Absolute tolerance used for every distance comparison.
pub const TOLERANCE: f64 = 1e-9;
