use thiserror::Error;

/// Errors raised by the length, filling, ruler and scenario computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("density integrates to {integral}, expected 1 (tolerance {tolerance:e})")]
    UnnormalizedDensity { integral: f64, tolerance: f64 },

    #[error("density has a negative value {value} at x = {x}")]
    NegativeDensity { x: f64, value: f64 },

    #[error("invalid sampled grid: {0}")]
    InvalidGrid(String),

    #[error("fourth-moment radicand is negative ({0:e})")]
    NegativeRadicand(f64),

    #[error("level index must be >= 1, got {0}")]
    InvalidIndex(i64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("segments overlap or are out of order at index {0}")]
    OverlappingSegments(usize),

    #[error("ground-state length formula needs an even electron count, got {0}")]
    OddElectronCount(u64),

    #[error("filling plan has no occupied levels")]
    EmptyFilling,

    #[error("invalid filling plan: {0}")]
    InvalidFilling(String),

    #[error("{particles} particles cannot be split evenly into {segments} segments")]
    IndivisibleSegmentation { particles: u64, segments: u64 },

    #[error("fixed-point iteration did not converge after {iterations} iterations (last step {last_step:e})")]
    NoConvergence { iterations: usize, last_step: f64 },

    #[error("wells overlap beyond nearest neighbours: a - L1 = {overlap} >= L1 = {shift}")]
    ExcessiveOverlap { overlap: f64, shift: f64 },

    #[error("subsystem has no electrons")]
    EmptySubsystem,

    #[error("adaptive quadrature exceeded {0} subdivisions")]
    MaxSubdivisionsExceeded(usize),

    #[error("no sign change over the admissible range")]
    NoSignChange,

    #[error("fermion level {0} occupied twice; the antisymmetrized state vanishes")]
    DuplicateLevelForFermions(u32),
}

impl Error {
    /// Stable machine-readable code, used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnnormalizedDensity { .. } => "UnnormalizedDensity",
            Error::NegativeDensity { .. } => "NegativeDensity",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::NegativeRadicand(_) => "NegativeRadicand",
            Error::InvalidIndex(_) => "InvalidIndex",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::OverlappingSegments(_) => "OverlappingSegments",
            Error::OddElectronCount(_) => "OddElectronCount",
            Error::EmptyFilling => "EmptyFilling",
            Error::InvalidFilling(_) => "InvalidFilling",
            Error::IndivisibleSegmentation { .. } => "IndivisibleSegmentation",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::ExcessiveOverlap { .. } => "ExcessiveOverlap",
            Error::EmptySubsystem => "EmptySubsystem",
            Error::MaxSubdivisionsExceeded(_) => "MaxSubdivisionsExceeded",
            Error::NoSignChange => "NoSignChange",
            Error::DuplicateLevelForFermions(_) => "DuplicateLevelForFermions",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
