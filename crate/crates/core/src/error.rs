// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("generator exhausted: {0}")]
    GeneratorExhausted(String),
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),
    #[error("not found on grid: {0}")]
    NotFound(String),
    #[error("uniqueness violated: {0}")]
    NonUnique(String),
}

pub type Result<T> = std::result::Result<T, Error>;
