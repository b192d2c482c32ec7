use thiserror::Error;

/// Errors reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("log_gamma has a pole at {0}")]
    Pole(f64),

    #[error("quadrature did not converge on [{lo}, {hi}] after {panels} panels (error estimate {estimate:e})")]
    Divergence { lo: f64, hi: f64, panels: usize, estimate: f64 },

    #[error("point {re} + {im}i lies on the branch cut")]
    CutViolation { re: f64, im: f64 },

    #[error("Remez exchange did not level after {iterations} iterations (levelling ratio {levelling_ratio})")]
    NonConvergence { iterations: usize, levelling_ratio: f64 },

    #[error("problem needs about {required_bits} bits of precision, only {available_bits} available")]
    PrecisionBudget { required_bits: u32, available_bits: u32 },

    #[error("ill-conditioned: {0}")]
    Conditioning(String),

    #[error("no sign change of {what} on [{lo}, {hi}]")]
    BracketFailure { what: String, lo: f64, hi: f64 },

    #[error("branch continuation failed near y = {y}")]
    BranchTracking { y: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
