use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("graph is not connected")]
    NotConnected,

    #[error("graph is not chordal")]
    NotChordal,

    #[error("graph is not a tree")]
    NotATree,

    #[error("order {order} is below the minimum of {min}")]
    OrderTooSmall { order: usize, min: usize },

    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    #[error("matching is not perfect")]
    NotPerfect,

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("ordering is not a perfect elimination ordering")]
    InvalidPeo,

    #[error("graph is not bistable")]
    NotBistable,

    #[error("graph is not alpha+-stable")]
    NotAlphaPlus,

    #[error("unsupported graph class: neither bipartite nor chordal and {n} vertices exceed the oracle limit {limit}")]
    UnsupportedClass { n: usize, limit: usize },

    #[error("oracle budget exceeded: {what} is {actual}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("bad size: {0}")]
    BadSize(String),

    #[error("path length {0} is not even")]
    Parity(usize),

    #[error("path endpoint {0} is not attached to the host graph")]
    EndpointNotAttached(usize),

    #[error("edge {0:?} is not in the graph")]
    MissingEdge(Edge),

    #[error("precondition failed: {0}")]
    Precondition(String),
}
