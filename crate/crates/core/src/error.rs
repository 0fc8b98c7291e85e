use thiserror::Error;

/// Errors raised by the exact polytope and top machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("degenerate facet: {0}")]
    DegenerateFacet(String),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
