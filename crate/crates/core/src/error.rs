use thiserror::Error;

/// Everything that can go wrong while building or querying the operator models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// sup v_{n+1}/v_n is infinite, so B(r,s) is not a bounded operator on lp(v).
    #[error("weight ratio v(n+1)/v(n) is unbounded: B(r,s) is not continuous on lp(v)")]
    UnboundedRatio,

    #[error("declared {quantity} = {declared} disagrees with observed tail value {observed}")]
    DeclaredMismatch {
        quantity: &'static str,
        declared: f64,
        observed: f64,
    },

    #[error("continuity failure: {0}")]
    ContinuityFailure(String),

    /// The requested point lies in the closed disk |r - alpha| <= L|s|.
    #[error("alpha = {re}{im:+}i lies in the spectrum: |r - alpha| = {distance} <= L|s| = {radius}")]
    SpectrumViolation {
        re: f64,
        im: f64,
        distance: f64,
        radius: f64,
    },

    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),

    #[error("aggregation violation: {0}")]
    AggregationViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
