use thiserror::Error;

use crate::graph::MAX_VERTICES;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph on {0} vertices exceeds the capacity of {MAX_VERTICES}")]
    Capacity(usize),

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{x}{y} is not an edge")]
    NotAnEdge { x: usize, y: usize },

    #[error("maximum degree {found} exceeds the bound {bound}")]
    DegreeBound { found: usize, bound: usize },

    #[error("not a cluster: {0}")]
    NotACluster(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("search space too large: {0}")]
    SearchCapacity(String),

    #[error("graph6 parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
