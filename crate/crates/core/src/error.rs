use thiserror::Error;

use crate::Statistic;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("x = {x} is outside the open interval ({lo}, {hi}) admissible for {statistic}")]
    Domain {
        statistic: Statistic,
        x: f64,
        lo: f64,
        hi: f64,
    },

    #[error("saddle-point iteration did not converge after {iterations} iterations (last residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("{what} requested for n = {n}, above the cap of {cap}")]
    Size {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("expansion order {requested} is not available (maximum {max})")]
    Order { requested: usize, max: usize },

    #[error("threshold {threshold} lies beyond the support (maximum value {support_max})")]
    EmptyTail { threshold: i64, support_max: i64 },

    #[error("expected a {expected} saddle point, got {found}")]
    StatisticMismatch {
        expected: Statistic,
        found: Statistic,
    },

    #[error("bracket partial sum {value} is not positive; the expansion is outside its asymptotic regime")]
    NonPositiveBracket { value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. } => 2,
            Error::Size { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
