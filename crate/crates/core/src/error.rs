use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("instance has {n} values, {method} is limited to {limit}")]
    TooLarge {
        method: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("malformed report: {0}")]
    Report(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
