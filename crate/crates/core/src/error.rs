use thiserror::Error;

/// Errors reported by state construction and numeric evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("radial value {0} is outside [0, 1)")]
    RadiusOutOfRange(f64),

    #[error("parameter `{0}` must be finite")]
    NonFinite(&'static str),

    #[error("quadratic coefficient must be positive, got {0}")]
    NonPositiveQuadratic(f64),

    #[error("relative accuracy target must lie in (0, 1), got {0}")]
    EpsilonOutOfRange(f64),

    #[error("tail target must lie in (0, 1e-6], got {0}")]
    TailTargetOutOfRange(f64),

    #[error("trajectory needs at least two samples, got {0}")]
    TooFewSamples(usize),

    #[error("angular range is empty: {lo} is not below {hi}")]
    EmptyRange { lo: f64, hi: f64 },

    #[error("state window must be nonempty")]
    EmptyWindow,

    #[error("amplitude at j={0} is not finite")]
    NonFiniteAmplitude(i64),

    #[error("moments of the zero state are undefined")]
    ZeroState,

    #[error("operation requires an opposite-xi superposition")]
    WrongScsKind,

    #[error("superposition cancels exactly at phi0 = {0}; fidelity is undefined there")]
    DegenerateSuperposition(f64),

    #[error("list of {0} must be nonempty")]
    EmptyList(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
