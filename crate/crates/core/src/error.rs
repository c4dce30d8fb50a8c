use thiserror::Error;

use crate::graph::Edge;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a graph needs at least one vertex")]
    EmptyVertexSet,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} outside [1, {n}]")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("{0} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("edge {0} shares a vertex with another matching edge")]
    NotAMatching(Edge),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("sequence has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("entries sum to {found}, expected {expected}")]
    BadSum { expected: u64, found: u64 },
    #[error("vertex subset must be nonempty")]
    EmptySubset,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("input exceeds size cap: {0}")]
    SizeCap(String),
    #[error("graph is disconnected: {0}")]
    Disconnected(String),
    #[error("negative entry produced: {0}")]
    NegativeEntry(String),
}
