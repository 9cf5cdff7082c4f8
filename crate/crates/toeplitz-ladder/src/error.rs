use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input outside the domain of the function (poles, parameter constraints).
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested index lies outside the data that was computed.
    #[error("range error: {0}")]
    Range(String),

    /// A leading principal minor vanished while building the polynomials.
    #[error("degenerate weight: vanishing Toeplitz minor at n = {n}")]
    DegenerateWeight { n: usize },

    /// Quadrature did not settle before the point cap; carries the best estimate.
    #[error("accuracy error after {points} points (best estimate {best_re:e}{best_im:+e}i, last change {change:e})")]
    Accuracy {
        points: usize,
        best_re: f64,
        best_im: f64,
        change: f64,
    },

    /// A recurrence step would divide by zero.
    #[error("singular step at n = {n}: {reason}")]
    SingularStep { n: usize, reason: String },

    /// A quantity that should be independent of n was not.
    #[error("inconsistency in {what}: {detail}")]
    Inconsistency { what: String, detail: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
