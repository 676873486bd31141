use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("state norm {norm:e} is below the zero-norm floor; the state was projected out")]
    ZeroNorm { norm: f64 },

    #[error("amplitude at position {position} would leave the lattice")]
    BoundaryOverflow { position: i64 },

    #[error("state norm {norm} deviates from 1 by more than the allowed tolerance")]
    NotNormalized { norm: f64 },

    #[error("dense operator dimension {dim} exceeds the limit of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("path enumeration over {steps} steps exceeds the limit of {max}")]
    TooManySteps { steps: usize, max: usize },

    #[error("state is not supported on the co-located subspace")]
    NotColocated,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
