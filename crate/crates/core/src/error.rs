use num_rational::Rational64;
use thiserror::Error;

/// A violated [`CriticalSpectrum`](crate::CriticalSpectrum) invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("spectrum has no atoms")]
    Empty,
    #[error("critical value {0} lies outside [0, 1]")]
    ValueOutOfRange(Rational64),
    #[error("multiplicity at value {0} must be at least 1")]
    ZeroMultiplicity(Rational64),
    #[error("betti weight {betti_weight} exceeds multiplicity {multiplicity} at value {value}")]
    BettiExceedsMultiplicity {
        value: Rational64,
        multiplicity: u32,
        betti_weight: u32,
    },
    #[error("no critical value at 0 (f0 must attain its minimum 0)")]
    MissingMinimum,
    #[error("no critical value at 1 (f0 must attain its maximum 1)")]
    MissingMaximum,
    #[error("betti weight at extreme value {0} must be at least 1")]
    ExtremeWithoutBetti(Rational64),
    #[error("total multiplicity {0} is below 2")]
    TooFewCriticalPoints(u64),
    #[error("total betti weight {0} is below 2")]
    TooFewBetti(u64),
    #[error("unknown preset `{0}` (expected circle, sphere or torus)")]
    UnknownPreset(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("grid size n*D = {requested} exceeds the resource cap {cap}")]
    ResourceCap { requested: u64, cap: u64 },

    #[error("solver did not converge after {iterations} iterations (target {target}, residual {residual:e})")]
    NonConvergence {
        target: f64,
        iterations: u32,
        residual: f64,
    },

    #[error("spectrum file: {0}")]
    Format(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
