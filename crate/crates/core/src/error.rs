use thiserror::Error;

/// Errors raised while building or transforming graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("operation requires at least one vertex")]
    Empty,
    #[error("graph has {n} vertices, beyond the graph6 limit of {max}")]
    TooLarge { n: usize, max: usize },
}

/// Parse failure with the byte offset where decoding stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} vertices")]
    Partial { expected: usize, got: usize },
    #[error("dynamism target r must be at least 1")]
    ZeroR,
    #[error("palette must contain at least one color")]
    EmptyPalette,
    #[error("vertex order is not a permutation of the vertex set")]
    BadOrder,
}

/// Failures of the randomized constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resampling did not converge after {rounds} rounds")]
    NotConverged { rounds: u64 },
    #[error("structural inconsistency: {0}")]
    Structural(String),
    #[error("stage `{stage}` failed: {reason}")]
    Stage { stage: String, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}
