//! Error type shared by every module.
//!
//! Diagnostic payloads are stored as `f64` regardless of the scalar type the
//! computation ran in, so the error enum stays free of type parameters.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// A named configuration choice the library does not recognize.
    #[error("unknown configuration {name:?} for {what}")]
    Config { what: &'static str, name: String },

    /// An iterative routine failed to converge or a value left the
    /// representable range.
    #[error("numerical failure in {what}: {detail}")]
    Numeric { what: &'static str, detail: String },

    /// Evaluation at or too close to a pole of the underlying function.
    #[error("pole of {what} near {location}")]
    Pole { what: &'static str, location: f64 },

    /// A branch-specific routine was called on the wrong sign of mu^2.
    #[error("{what} expects the {expected} branch, got mu^2 = {mu2}")]
    WrongBranch {
        what: &'static str,
        expected: &'static str,
        mu2: f64,
    },

    /// The order parameter lies outside the validity window of the formula.
    #[error("order parameter out of the validity window: |mu| = {mu_abs}")]
    OutOfWindow { mu_abs: f64 },

    /// The closed-form bracket is non-positive, so no real-order bound-state
    /// energy exists on this branch.
    #[error("no real closed-form energy: bracket = {bracket}")]
    NoRealClosedForm { bracket: f64 },

    /// The requested configuration supports no bound state.
    #[error("no bound state: {detail}")]
    NoBoundState { detail: String },

    /// The boundary-phase fit did not reach its residual tolerance.
    #[error("phase fit failed: residual {residual:e} at eta = {eta}")]
    FitFailure { eta: f64, residual: f64 },

    /// A solver expected a unique root but bracketed several.
    #[error("expected a unique root, found {count} in {what}")]
    MultipleRoots { what: &'static str, count: usize },

    /// A boundary function failed the square-integrability check.
    #[error("deficiency elements not square-integrable: |mu| = {mu_abs}")]
    IntegrabilityViolation { mu_abs: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn numeric(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Numeric {
            what,
            detail: detail.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_render() {
        let e = Error::domain("gamma", "x must be positive or non-integer");
        assert!(e.to_string().contains("gamma"));
        let e = Error::OutOfWindow { mu_abs: 1.25 };
        assert!(e.to_string().contains("1.25"));
        let e = Error::NoRealClosedForm { bracket: -3.5 };
        assert!(e.to_string().contains("-3.5"));
    }
}
