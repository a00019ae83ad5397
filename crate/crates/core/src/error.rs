use thiserror::Error;

/// Errors raised by the graph algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("blobs overlap at vertex {0}")]
    OverlappingBlobs(usize),

    #[error("blob {0} is empty or does not induce a connected subgraph")]
    DisconnectedBlob(usize),

    #[error("paths {first} and {second} share vertex {vertex}")]
    PathsNotDisjoint {
        first: usize,
        second: usize,
        vertex: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
