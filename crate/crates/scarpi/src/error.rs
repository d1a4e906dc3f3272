//! Error types shared across the crate.

use std::fmt;

/// A single admissibility violation found by
/// [`TransitionFunction::validate`](crate::transition::TransitionFunction::validate).
///
/// `field` names the offending parameter, `message` states the condition it
/// breaks. `Display` prints them as one phrase, e.g. `alpha2 out of (0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl Violation {
    pub(crate) fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.field, self.message)
    }
}

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation
    /// (branch point, excluded singularity, nonpositive time, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested numerical configuration cannot produce a valid result
    /// (e.g. a contour that cannot be made to enclose a singularity).
    #[error("configuration error: {0}")]
    Configuration(String),

    /// The computation ran but produced values that fail internal sanity
    /// checks (non-finite summands, broken conjugate symmetry, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A transition function failed admissibility validation.
    #[error("invalid transition function: {}", format_violations(.0))]
    InvalidTransition(Vec<Violation>),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
