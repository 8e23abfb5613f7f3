use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("group sizes are not integral: n = {n}, gamma = {gamma}")]
    NonIntegralGroups { n: usize, gamma: f64 },

    #[error("rejection budget exhausted after {attempts} attempts: {reason}")]
    RejectionExhausted { attempts: usize, reason: String },

    #[error("row {row} has a nonzero share but no eligible creditors")]
    ZeroDenominator { row: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("map left its box at coordinate {index}: value {value}, bound [0, {upper}]")]
    BoxViolation { index: usize, value: f64, upper: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("zero variance in {0}")]
    ZeroVariance(&'static str),

    #[error("all {0} paths failed")]
    AllPathsFailed(usize),

    #[error("dense output refused for n = {n} (limit {limit})")]
    DenseTooLarge { n: usize, limit: usize },
}
