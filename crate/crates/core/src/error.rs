use std::io;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual} ({context})")]
    DimensionMismatch {
        expected: usize,
        actual: usize,
        context: &'static str,
    },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// The right-hand side is not in the column space of the restricted system.
    #[error("linear system has no solution on the given support")]
    NoSolution,

    /// A decoder was handed a syndrome that no error inside the erasure can produce.
    #[error("syndrome is inconsistent with the erasure")]
    InconsistentSyndrome,

    /// A decoder returned a correction whose syndrome differs from the observed one.
    #[error("decoder `{decoder}` returned a correction that violates the syndrome")]
    UnsoundCorrection { decoder: String },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, actual: usize, context: &'static str) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            actual,
            context,
        })
    }
}
