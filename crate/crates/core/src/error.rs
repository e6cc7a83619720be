use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),

    #[error("invalid family parameters: {0}")]
    InvalidFamilyParameters(String),

    #[error("star operation precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("graph is not a forest")]
    NotAForest,

    #[error("graph is not a tree")]
    NotATree,

    #[error("graph of order {order} exceeds the limit {limit}")]
    TooLarge { order: usize, limit: usize },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial has no real root")]
    NoRealRoot,

    #[error("sequence lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("sequence is not non-increasing at position {0}")]
    NotNonIncreasing(usize),

    #[error("empty sequence")]
    EmptySequence,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
