use thiserror::Error;

/// Errors produced by ladder, dual, realization and report operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The dimension sequence is not a valid strictly increasing ladder.
    #[error("invalid ladder specification: {0}")]
    Specification(String),

    /// A family parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An inclusion was requested into a level below the element's level.
    #[error("level order violated: cannot include level {from} into level {to}")]
    LevelOrder { from: usize, to: usize },

    /// The level index is outside what the ladder defines.
    #[error("level {level} is not defined by this ladder (levels are 1..={max})")]
    LevelOutOfRange { level: usize, max: usize },

    /// A coefficient vector does not match the dimension of its level.
    #[error("dimension mismatch: expected {expected} coefficients, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Two elements were combined that live over different ladders.
    #[error("elements belong to different ladder specifications")]
    LadderMismatch,

    /// A coefficient or tail value was requested beyond the certified data.
    #[error("insufficient data: index {requested} requested, only {available} certified")]
    InsufficientData { requested: usize, available: usize },

    /// A level map family is not compatible with the ladder inclusions.
    #[error("cocone violation at level {level}: {detail}")]
    CoconeViolation { level: usize, detail: String },

    /// The sampling grid cannot resolve the requested Fourier mode.
    #[error("aliasing: grid of {grid} points cannot resolve mode {mode} (need grid > {need})")]
    Aliasing { mode: i64, grid: usize, need: u64 },

    /// The sampling grid is not an even integer of at least 8 points.
    #[error("invalid grid size {0}: must be even and at least 8")]
    InvalidGrid(usize),

    /// A numerical diagnostic could not be produced.
    #[error("diagnostic error: {0}")]
    Diagnostic(String),

    /// Invalid command-line or configuration input.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
