use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("loop edge at vertex {vertex} (line {line})")]
    LoopEdge { vertex: usize, line: usize },
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("edge id {edge} out of range (graph has {count} edges)")]
    EdgeOutOfRange { edge: usize, count: usize },
    #[error("the two graphs do not share the same underlying multigraph")]
    MismatchedUnderlying,
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge set {0:?} is not a spanning tree")]
    NotSpanningTree(Vec<usize>),
    #[error("edge subset has odd degree at vertex {vertex}")]
    OddDegreeSubset { vertex: usize },
    #[error("vertex count {n} exceeds enumeration limit {limit}")]
    EnumerationLimit { n: usize, limit: usize },
    #[error("size guard violated: {0}")]
    SizeGuard(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("flow does not cover edge {edge}")]
    FlowMissingEdge { edge: usize },
    #[error("invalid flow parameters: {0}")]
    BadFlowParams(String),
    #[error("boundary function is not parity-compliant at vertex {vertex}")]
    ParityViolation { vertex: usize },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("invalid plane embedding: {0}")]
    InvalidEmbedding(String),
    #[error("tight cut denominator is not positive; the cut certifies no index")]
    DegenerateTightCut,
    #[error("folding contract violation: {0}")]
    FoldContract(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
