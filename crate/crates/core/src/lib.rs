//! Fractional triangle decompositions of dense graphs.
//!
//! The crate is organised around five areas:
//!
//! * [`graph`] and [`cut`]: dense bitset graphs, triangle / K4 / rooted-pair
//!   enumeration and per-cut statistics (`t_A`, `κ_A`, `λ_A`, `e_A`).
//! * [`generators`]: complete graphs, the six-part barrier graph, the
//!   `C4·K_h` blow-up and seeded random dense graphs.
//! * [`flow`]: the rooted-pair flow network, an exact integer max-flow,
//!   weight switching along K4s and decomposition / Farkas verification.
//! * [`bounds`]: exact evaluators and audits for the κ/λ inequalities.
//! * [`grid`]: the normalised `g − k` objective over the parameter box,
//!   its gradients, grid sweeps and the mean-value certificate.

#![allow(clippy::suspicious_arithmetic_impl, clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cut;
pub mod error;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod grid;
pub mod io;
pub mod rational;

pub use cut::CutSet;
pub use error::{Error, Result};
pub use flow::{
    decompose, verify_decomposition, verify_farkas, Decomposition, FailureReport, FailureStage, FarkasCertificate,
    FlowNetwork, FlowResult, TriangleWeighting,
};
pub use graph::{Graph, GraphStats, Reducedness, RootedPair, Triangle};
pub use rational::{Delta, Rational};

/// Version tag written into every JSON artifact.
pub const SCHEMA_VERSION: &str = "1.0";
