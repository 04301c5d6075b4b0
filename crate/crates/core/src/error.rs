use thiserror::Error;

use crate::chase::ChaseTrace;

pub type Result<T> = std::result::Result<T, FanoError>;

#[derive(Debug, Error)]
pub enum FanoError {
    #[error("weight {0:?} is not dominant (entries must be non-increasing)")]
    NotDominant(Vec<i64>),

    #[error("invalid Grassmannian Gr({k},{n}): need 0 < k < n")]
    InvalidGrassmannian { k: usize, n: usize },

    #[error("weight block of length {got} does not match rank {expected}")]
    WeightLength { expected: usize, got: usize },

    #[error("bundles live on different ambient spaces: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },

    #[error("Omega^{p} on Gr({k},{n}) is reducible and not supported")]
    UnsupportedOmega { p: usize, k: usize, n: usize },

    #[error("exterior power of {0} is not supported (only line bundles and twisted U, U*, Q, Q*)")]
    UnsupportedExteriorPower(String),

    #[error("cannot parse bundle expression '{input}': {reason}")]
    BundleParse { input: String, reason: String },

    #[error("inconsistent chase: {message}")]
    InconsistentChase { message: String, trace: Box<ChaseTrace> },

    #[error("chase did not reach a fixed point within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("unknown family '{0}'")]
    UnknownFamily(String),

    #[error("family database error: {0}")]
    Database(String),

    #[error("Riemann-Roch value for family {family} at m={m} is not an integer ({value})")]
    NonIntegralRiemannRoch { family: String, m: i64, value: String },

    #[error("l={l} is below the very-ampleness threshold {j} of family {family}")]
    BelowVeryAmple { family: String, l: i64, j: i64 },

    #[error("twist l={l} must exceed the index {index} of family {family}")]
    TwistNotAboveIndex { family: String, l: i64, index: i64 },

    #[error("l={l} is below l_Y={threshold} of family {family}")]
    BelowThreshold { family: String, l: i64, threshold: i64 },

    #[error("no ambient support for {what} on family {family}")]
    NoAmbientSupport { family: String, what: String },

    #[error("{0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
