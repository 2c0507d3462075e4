use thiserror::Error;

use crate::seq::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must have at least one element")]
    EmptyAlphabet,

    #[error("element {element} is outside the alphabet of size {size}")]
    InvalidElement { element: Elem, size: Elem },

    #[error("sequence of length {len} exceeds depth {depth}")]
    DepthExceeded { len: usize, depth: usize },

    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    #[error("unknown principle `{0}`")]
    UnknownPrinciple(String),

    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error("size limit exceeded: {0}")]
    Limit(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
