use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size mismatch: partition of {partition} against {vertices} vertices")]
    SizeMismatch { partition: usize, vertices: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// An invariant of the exact arithmetic was violated; always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
