use thiserror::Error;

/// Errors raised by the algebra and enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two operands that must live in the same degree do not.
    #[error("degree mismatch: {left} vs {right}")]
    Degree { left: usize, right: usize },

    /// The constant term cannot be inverted.
    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// A brute-force bound or safety cap was exceeded.
    #[error("bound exceeded: {what} = {value} > {cap}")]
    Bound {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    /// A truncation window too small for a meaningful comparison.
    #[error("truncation underflow: {0}")]
    Underflow(String),

    /// Two independent computations of the same quantity disagree.
    #[error("verification mismatch in {what}: {left} != {right}")]
    Verification {
        what: String,
        left: String,
        right: String,
    },

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn mismatch(
        what: impl Into<String>,
        left: impl std::fmt::Display,
        right: impl std::fmt::Display,
    ) -> Self {
        Error::Verification {
            what: what.into(),
            left: left.to_string(),
            right: right.to_string(),
        }
    }

    /// Short machine-readable tag used by the command line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Degree { .. } => "degree",
            Error::NotInvertible(_) => "not-invertible",
            Error::Bound { .. } => "bound",
            Error::Underflow(_) => "underflow",
            Error::Verification { .. } => "verification",
            Error::Parse(_) => "parse",
        }
    }
}
