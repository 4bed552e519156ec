//! Flow-based construction of fractional triangle decompositions.
//!
//! Starting from the uniform weighting `1/t_av`, every edge with too much
//! weight pushes its excess to deficient edges through rooted pairs. The
//! amounts come from a maximum flow in a network whose nodes are the edges of
//! the graph; each unit of flow across a rooted pair `{ab, cd}` is realised
//! by the K4 switch in [`apply_switch`].

mod decompose;
mod farkas;
mod maxflow;
mod network;
mod weighting;

pub use decompose::{decompose, Decomposition, FailureReport, FailureStage};
pub use farkas::{c4_blowup_certificate, verify_farkas, FarkasCertificate, FarkasCheck};
pub use maxflow::{max_flow, FlowResult};
pub use network::{barrier_weight_lower_bound, build_network, FlowNetwork};
pub use weighting::{apply_switch, verify_decomposition, DecompositionCheck, TriangleWeighting};
