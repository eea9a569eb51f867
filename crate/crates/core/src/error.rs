use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("quotient is not a torus: {0}")]
    NotSaturated(String),

    #[error("invalid generalized Cartan matrix: {0}")]
    Structural(String),

    #[error("matrix is not symmetrizable: {0}")]
    Symmetrizability(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not a valid slice: {0}")]
    InvalidSlice(String),

    #[error("inconsistent lifts: {0}")]
    Lift(String),

    #[error("unbounded degree-0 piece: {0}")]
    ImproperDegree(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("computation cancelled")]
    Cancelled,
}

pub type Result<T> = std::result::Result<T, Error>;
