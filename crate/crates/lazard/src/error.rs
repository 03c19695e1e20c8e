use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("series mismatch: {0}")]
    SeriesMismatch(String),
    #[error("substituted series has a nonzero constant term")]
    NonzeroConstant,
    #[error("linear coefficient is not a unit")]
    NonUnitLinear,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("insufficient truncation order: need {needed}, have {have}")]
    InsufficientOrder { needed: u32, have: u32 },
    #[error("substitution does not preserve degrees: {0}")]
    DegreeViolation(String),
    #[error("invalid variety spec: {0}")]
    InvalidSpec(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("independent routes disagree: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
