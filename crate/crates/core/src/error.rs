use crate::specfun::SpecFunError;

/// Crate-wide error.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("invalid {name}: {reason}")]
    InvalidInput { name: &'static str, reason: String },
    #[error("outside the asymptotic regime: {quantity} = {value} (need ≥ {required})")]
    Regime { quantity: &'static str, value: f64, required: f64 },
    #[error("cannot parse {format}: {reason}")]
    Parse { format: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput { name, reason: reason.into() }
    }

    /// True for errors caused by the caller's input rather than by a failed
    /// computation.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidInput { .. } | Error::Regime { .. } | Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(name, format!("must be a positive finite number, got {value}")))
    }
}
