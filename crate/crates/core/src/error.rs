use thiserror::Error;

use crate::parse::SyntaxError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("the zero element is not in the multiplicative group")]
    ZeroElement,
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("the two elements are equal")]
    EqualElements,
    #[error("`{element}` is not an element of {field}")]
    WrongField { element: String, field: String },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Unsupported(String),
    #[error("enumeration needs {candidates} candidates, above the limit of {limit}")]
    CapacityExceeded { candidates: String, limit: u64 },
    #[error("β coincides with one of the α_i")]
    DegenerateBeta,
    #[error("log A + h(β) = {0} is not positive")]
    NonpositiveDenominator(String),
    #[error("{0} is not a solution of the system")]
    NotSolutions(String),
    #[error("column index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("the h-gap property needs at least two columns")]
    DegenerateMatrix,
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("log ρ_{0} is not positive")]
    NonpositiveLogRho(usize),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
