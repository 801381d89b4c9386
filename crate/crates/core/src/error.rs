//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes at evaluation point")]
    PoleAtEvaluationPoint,

    #[error("vanishing denominator bracket in Pieri coefficient at ({0}, {1}, {2})")]
    VanishingDenominatorBracket(i64, i64, i64),

    #[error("triple ({0}, {1}, {2}) outside the populated table (max level {3})")]
    LevelOutOfRange(i64, i64, i64, i64),

    #[error("input is not Weyl-symmetric")]
    NotWeylSymmetric,

    #[error("polynomial violates the leading-term structure: {0}")]
    StructureViolation(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("noncommutative term budget of {0} exceeded")]
    TermBudgetExceeded(usize),

    #[error("identity falsified: {0}")]
    Falsified(String),

    #[error("invalid serialized data: {0}")]
    InvalidData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
