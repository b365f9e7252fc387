//! Functional digraphs of power maps on finite cyclic groups.
//!
//! For a cyclic group of order `n` and an exponent `k`, the map `x -> x^k`
//! is an endomorphism whose iteration digraph has one outgoing edge per
//! element. This crate builds that digraph explicitly (vertices are the
//! additive labels `0..n-1`, the edge is `a -> k*a mod n`), computes its
//! cycle/tree structure, exact characteristic and minimal polynomials,
//! automorphism group order and isomorphism certificates from closed
//! forms, and cross-checks every closed form against brute-force oracles.

pub mod aut;
pub mod canon;
pub mod digraph;
pub mod numtheory;
pub mod report;
pub mod spectral;
pub mod structure;
pub mod verify;

pub use aut::{AutReport, OrbitInvariant, TreeCode};
pub use canon::CanonicalCert;
pub use digraph::{ComponentSummary, Decomposition, PowerDigraph};
pub use numtheory::{BigCount, CoprimeSplit};
pub use spectral::{AdjacencyMatrix, DensePoly, Eigenvalue, FactoredPoly};
pub use structure::{CycleStructure, GraphFacts, Predicates, TreeProfile};

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation with a configured size cap refuses oversized input.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    /// An arithmetic identity that is a theorem failed to hold; this
    /// always signals a bug, never bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
