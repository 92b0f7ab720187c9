use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("operation is not supported for tubular diagrams")]
    UnsupportedTubular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("not an element of the extended Weyl group: {0}")]
    NotAnElement(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("braid letter {letter} out of range for a tuple of length {len}")]
    MoveOutOfRange { letter: i32, len: usize },
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("factorizations have different products")]
    ProductMismatch,
    #[error("factorizations have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("budget exhausted after {nodes} nodes")]
    Exhausted { nodes: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
