use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("family of primes is empty")]
    EmptyFamily,
    #[error("relation has a cycle through {0} and {1}")]
    CycleDetected(usize, usize),
    #[error("set is not closed in the requested topology")]
    NotClosed,
    #[error("ideal is not regular")]
    NotRegular,
    #[error("ideal is not proper")]
    NotProper,
    #[error("operands belong to different spectra")]
    MixedSpectra,
    #[error("set is not flat open")]
    NotOpen,
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
