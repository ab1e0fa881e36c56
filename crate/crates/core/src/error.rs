use thiserror::Error;

use crate::bounds::FamilyId;
use crate::symbol::Scenario;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("family {family} is not supported under scenario {scenario}")]
    UnsupportedScenario { family: String, scenario: Scenario },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("search budget exceeded after {explored} of {total} input maps")]
    BudgetExceeded { explored: u64, total: u128 },

    #[error("invalid puncture: {0}")]
    InvalidPuncture(String),

    #[error("encoding does not match family: {0}")]
    SpecMismatch(String),

    #[error("compile error: {0}")]
    Compile(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn unsupported(family: FamilyId, scenario: Scenario) -> Self {
        Error::UnsupportedScenario {
            family: family.to_string(),
            scenario,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
