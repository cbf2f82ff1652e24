use thiserror::Error;

/// Errors raised by coefficient evaluation, basis construction and I/O parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator Pochhammer symbol vanishes at term {index}")]
    DenominatorPole { index: usize },
    #[error("hypergeometric series has no nonpositive integer numerator parameter")]
    NotTerminating,
    #[error("gamma arguments cannot be paired with integer gaps")]
    NonIntegerGap,
    #[error("gamma function pole at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(String),
    #[error("mixed scalar backends: {0} and {1}")]
    MixedBackend(String, String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("missing basis data: {0}")]
    MissingData(String),
    #[error("index contract violated: {0}")]
    IndexContract(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("family mismatch: {0} vs {1}")]
    FamilyMismatch(String, String),
    #[error("no closed form available for {0}")]
    NoClosedForm(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
