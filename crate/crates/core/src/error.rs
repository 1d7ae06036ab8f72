use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("line {line}: {message}")]
    Line { line: usize, message: String },

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("{what} exceeds cap: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("not an ID: {0}")]
    NotAnId(String),

    #[error("malformed diagram: {0}")]
    Malformed(String),

    #[error("not a KS proof: {0}")]
    NotAProof(String),

    #[error("kernel dimension {dimension} exceeds the enumeration cap {cap}")]
    KernelTooLarge { dimension: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
