use thiserror::Error;

/// Errors raised by the algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid tabloid: {0}")]
    InvalidTabloid(String),
    #[error("invalid web: {0}")]
    InvalidWeb(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("total thickness {0} exceeds the supported maximum {max}", max = crate::MAX_R)]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
