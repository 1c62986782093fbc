use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncMismatch(usize, usize),
    #[error("wrong constant term for {0}")]
    ConstantTerm(&'static str),
    #[error("word of degree {0} exceeds truncation {1}")]
    BeyondTruncation(usize, usize),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("element not in {0}")]
    NotInSubalgebra(&'static str),
    #[error("degree window exceeded: {0}")]
    WindowExceeded(i64),
    #[error("degree {0} above the allowed bound {1}")]
    DegreeTooLarge(usize, usize),
    #[error("zero input")]
    ZeroInput,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("infeasible linear system at degree {0}")]
    Infeasible(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
