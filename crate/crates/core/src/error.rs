use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("context mismatch: L={left} vs L={right}")]
    ContextMismatch { left: u32, right: u32 },

    #[error("diagonals {first:?} and {second:?} cross")]
    Crossing {
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("not a frieze: closure fails at row {row}, column {column}")]
    NotAFrieze { row: usize, column: usize },

    #[error("positivity failure at f({i},{j})")]
    PositivityFailure { i: i64, j: i64 },

    #[error("reconstruction failure: {0}")]
    ReconstructionFailure(String),

    #[error("not an infinite frieze: f({i},{j}) {reason}")]
    NotAnInfiniteFrieze { i: i64, j: i64, reason: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("span too small at vertex {vertex}: {detail}")]
    SpanTooSmall { vertex: i64, detail: String },

    #[error("not realizable: {0}")]
    NotRealizable(String),

    #[error("construction bug: {0}")]
    ConstructionBug(String),

    #[error("invalid strip: {0}")]
    InvalidStrip(String),

    #[error("invalid Cartan graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
