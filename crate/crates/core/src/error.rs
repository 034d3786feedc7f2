use thiserror::Error;

/// Failures raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the supported domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("{routine} did not converge (best estimate {best}, error estimate {err_estimate})")]
    NoConvergence {
        routine: &'static str,
        best: f64,
        err_estimate: f64,
    },

    #[error("{routine}: non-finite value encountered at {at}")]
    NonFinite { routine: &'static str, at: f64 },

    #[error("newton_invert: no bracket found for target {target} starting from {x0}")]
    NoBracket { target: f64, x0: f64 },

    #[error("{0}")]
    Unsupported(String),

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        expected,
    }
}
