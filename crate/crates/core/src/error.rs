use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected two vertex labels, got {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("self-loop on vertex {0:?}")]
    SelfLoop(String),
    #[error("invalid JSON document: {0}")]
    Json(String),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("graph is disconnected ({0} components); solve each component separately")]
    Disconnected(usize),
}

/// Structural problems with a layout, as opposed to a nesting violation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("vertex order is not a permutation of the graph's vertices")]
    NotPermutation,
    #[error("edge {0} has no queue")]
    MissingEdge(Edge),
    #[error("edge {0} is assigned a queue but is not in the graph")]
    ExtraEdge(Edge),
    #[error("edge {edge} is in queue {queue}, outside 1..={num_queues}")]
    QueueOutOfRange { edge: Edge, queue: usize, num_queues: usize },
    #[error("layout JSON: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("path filter would search for a path of 2^{0} edges; only 2^k <= 64 is supported")]
    PathTooLong(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("component of {size} vertices exceeds the canonicalization cap of {cap}; review the threshold override")]
    ComponentTooLarge { size: usize, cap: usize },
    #[error("components are not equivalent under the vertex order")]
    NotOrderEquivalent,
    #[error("counterpart edges nest; the order-equivalence precondition is broken")]
    EdgeNesting,
    #[error("delimiting components are not consistently oriented")]
    Orientation,
    #[error("layout extension structure absent: {0}")]
    StructureAbsent(String),
    #[error("kernel has {size} vertices, above the brute-force cap of {cap}; try synthetic thresholds")]
    KernelTooLarge { size: usize, cap: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VcError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("not a vertex cover: edge {0} is uncovered")]
    InvalidCover(Edge),
    #[error("no three members of type class share a queue signature")]
    NoEquivalentTriple,
    #[error("vertex {0} is not of the given type")]
    WrongType(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    OverCap { n: usize, cap: usize },
}
