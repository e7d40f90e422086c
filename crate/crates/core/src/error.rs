use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("directed graph contains a cycle through vertex {0}")]
    Cyclic(usize),

    #[error("enumeration cap of {cap} full subgraphs exceeded")]
    CapExceeded { cap: u64 },

    #[error("{local} local blocks exceed the bounded-local limit of {limit}")]
    TooManyLocalBlocks { local: usize, limit: usize },

    #[error("brute force is limited to {limit} {what}, got {got}")]
    TooLarge { what: &'static str, limit: usize, got: usize },

    #[error("{location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }
}
