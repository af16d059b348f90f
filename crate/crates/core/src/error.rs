use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument outside the supported domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function}: expected at least {expected} arguments, got {got}")]
    Dimension {
        function: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{function}: series did not converge after {terms} terms")]
    Convergence { function: &'static str, terms: usize },

    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },

    #[error("Milne-Pinney amplitude collapsed below {floor:e} at t = {t}")]
    Singularity { t: f64, floor: f64 },

    #[error("time mismatch: classical state at t = {classical}, Pinney state at t = {pinney}")]
    TimeMismatch { classical: f64, pinney: f64 },

    #[error("density normalization off by {deviation:e} (limit {limit:e})")]
    Normalization { deviation: f64, limit: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}
