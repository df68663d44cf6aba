use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("degree limit {limit} exceeded (reached {reached})")]
    DegreeLimit { limit: i64, reached: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
