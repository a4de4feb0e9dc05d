use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Error)]
pub enum FrameError {
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("family shapes do not match: {0}")]
    ShapeMismatch(String),

    #[error("vectors span only the zero subspace")]
    ZeroSpan,

    #[error("not a frame: optimal lower bound {lower:.3e}")]
    NotAFrame { lower: f64 },

    #[error("not a fusion frame: optimal lower bound {lower:.3e}")]
    NotAFusionFrame { lower: f64 },

    #[error("columns do not lie in the null space of the synthesis matrix: norm {norm:.3e}")]
    NullMapViolation { norm: f64 },

    #[error("local vectors of member {member} do not lie in and span its subspace")]
    LocalSpanMismatch { member: usize },

    #[error("local families of member {member} are not dual inside their subspace: residual {residual:.3e}")]
    NotLocalDual { member: usize, residual: f64 },

    #[error("invalid augmentation vector for member {member}: {reason}")]
    InvalidAugmentation { member: usize, reason: String },

    #[error("member {member} has weight {weight}; this construction requires unit weights")]
    UnsupportedWeights { member: usize, weight: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid document: {0}")]
    Validation(String),
}
