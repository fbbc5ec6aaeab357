use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("self-loop at vertex {0} is not a simple edge")]
    SelfLoop(usize),
    #[error("operation requires a loop-free graph")]
    LoopsPresent,
    #[error("graph or subset is not connected")]
    Disconnected,
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("matrix dimension {dim} exceeds cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("matrix has a negative entry")]
    NegativeEntry,
    #[error("matrix is reducible")]
    Reducible,
    #[error("iteration budget of {0} exhausted")]
    NoConvergence(usize),
    #[error("eigenpair could not be certified (residual {0:e})")]
    Uncertified(f64),
    #[error("input is not an eigenpair (residual {0:e})")]
    NotEigenpair(f64),
    #[error("zero vector")]
    ZeroVector,
    #[error("operation requires an even modulus, got {0}")]
    OddModulus(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
