use thiserror::Error;

use crate::graph::Reducedness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("minimum degree {min_degree} is below (1-delta)n = {bound}")]
    NotDenseEnough { min_degree: usize, bound: String },

    #[error("graph is not reduced: {0}")]
    NotReduced(Reducedness),

    #[error("graph has edges but no triangles")]
    NoTriangles,

    #[error("scaled capacity {0} does not fit in 64 bits")]
    CapacityOverflow(String),

    #[error("grid point outside the validity region: {0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
