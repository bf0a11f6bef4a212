use std::io;

use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("non-positive constant at byte {offset}")]
    NonPositiveConstant { offset: usize },

    #[error("axis index {index} outside {{1,2}} at byte {offset}")]
    AxisIndex { index: i64, offset: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("duplicate points at indices {0} and {1}")]
    DuplicatePoint(usize, usize),

    #[error("invalid difference set: {0}")]
    InvalidDifferenceSet(String),

    #[error("graph has {vertices} vertices, solver cap is {cap}")]
    TooManyVertices { vertices: usize, cap: usize },

    #[error("coloring domain does not match sampling space")]
    DomainMismatch,

    /// A sampled pair failed re-measurement. This is a sampler bug, never a
    /// coloring violation.
    #[error("internal sampler error: {0}")]
    Sampler(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("format error on line {line}: {message}")]
    Format { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
