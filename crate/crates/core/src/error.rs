use thiserror::Error;

use crate::profiles::ValidationReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unit mismatch: `{left}` vs `{right}`")]
    UnitMismatch { left: String, right: String },

    #[error("insufficient balance: cannot deduct {requested} from {available}")]
    InsufficientBalance { available: f64, requested: f64 },

    #[error("quantity must be finite and non-negative, got {0}")]
    InvalidQuantity(f64),

    #[error("label must not be empty")]
    EmptyLabel,

    #[error("invalid flow profile: {0}")]
    InvalidProfile(&'static str),

    #[error("ledger failed validation ({} finding(s))", .0.findings.len())]
    ValidationFailed(ValidationReport),

    #[error("ledger for period `{period}` failed validation ({} finding(s))", .report.findings.len())]
    PeriodValidationFailed {
        period: String,
        report: ValidationReport,
    },

    #[error("no service with actual use greater than zero")]
    EmptyBundle,

    #[error("area must be finite and non-negative, got {0}")]
    NegativeArea(f64),

    #[error("slope must be finite and strictly positive, got {0}")]
    InvalidSlope(f64),

    #[error("periods are not strictly increasing: `{previous}` then `{next}`")]
    UnorderedPeriods { previous: String, next: String },

    #[error("series mixes services or units: expected `{expected}`, found `{found}`")]
    MixedServices { expected: String, found: String },

    #[error("series needs at least 2 entries, got {0}")]
    TooShort(usize),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("corrupt event log at event {index}: {reason}")]
    CorruptLog { index: usize, reason: String },

    #[error("unknown template `{0}`")]
    UnknownTemplate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
