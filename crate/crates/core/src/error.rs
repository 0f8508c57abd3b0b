use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: VertexId, count: usize },

    #[error("part {index} is not connected: {vertices:?}")]
    DisconnectedPart { index: usize, vertices: Vec<VertexId> },

    #[error("parts overlap at vertex {0}")]
    OverlappingParts(VertexId),

    #[error("input too large: {actual} vertices exceeds the guard of {limit}")]
    SizeGuard { limit: usize, actual: usize },

    #[error("{format} parse error at line {line}: {message}")]
    Parse { format: &'static str, line: usize, message: String },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("region of vertex {0} is empty or disconnected")]
    DisconnectedRegion(VertexId),

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("unknown tree node {0}")]
    UnknownNode(VertexId),

    #[error("not a clique: {0}")]
    NotAClique(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
