use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible filters: {0}")]
    Incompatible(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("element with key {key:#018x} appears in both S and T")]
    Overlap { key: u64 },

    #[error("duplicate element with key {key:#018x} in {set}")]
    Duplicate { key: u64, set: &'static str },

    #[error("bit string has length {got}, expected {expected}")]
    BitLength { expected: usize, got: usize },

    #[error("invalid character {0:?} in bit string")]
    BitChar(char),

    #[error("parse error in {source_name}: {message}")]
    Parse {
        source_name: String,
        message: String,
    },

    #[error("graph error: {0}")]
    Graph(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}
