use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("{what}: no convergence (partial value {partial}, error estimate {error_estimate:e})")]
    Convergence {
        what: &'static str,
        partial: f64,
        error_estimate: f64,
    },

    #[error("{what}: no sign change in bracket [{lo}, {hi}]")]
    Bracket {
        what: &'static str,
        lo: f64,
        hi: f64,
    },

    #[error("maximizer hit the upper end of the bracket at x1 = {x1} (bracket too small)")]
    BoundaryMaximum { x1: f64 },

    #[error("SNR {snr} exceeds the configured maximum {a_max}")]
    SnrAboveMax { snr: f64, a_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(what: &'static str, value: f64) -> Result<T> {
    Err(Error::Domain { what, value })
}
