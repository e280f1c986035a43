//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be 1, 2 or 3")]
    InvalidDimension(usize),

    #[error("invalid fractional order s={s} for N={n_dim}: admissible window is 2s < N < 4s with s < 1")]
    OrderOutsideWindow { n_dim: usize, s: f64 },

    #[error("fractional order s={0} outside (0, 1)")]
    OrderOutsideUnit(f64),

    #[error("non-positive truncation radius {0}")]
    NonPositiveRadius(f64),

    #[error("point count {got} below minimum {min}")]
    TooFewPoints { got: usize, min: usize },

    #[error("grid point budget exceeded: {requested} > {budget}")]
    BudgetExceeded { requested: usize, budget: usize },

    #[error("field length {got} does not match grid size {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("field/grid mismatch: field built for a different grid")]
    GridMismatch,

    #[error("non-positive parameter {name} = {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("field must be strictly positive for the linearization potential")]
    NonPositiveField,

    #[error("angular index must be non-negative")]
    NegativeAngularIndex,

    #[error("zero field where a nonzero field is required")]
    ZeroField,

    #[error("grid too coarse to resolve the bubble: scale/dx = {ratio:.3} < {min}")]
    UnresolvedBubble { ratio: f64, min: f64 },

    #[error("no positive minimizer bracketed during calibration (grid too coarse or box too small)")]
    CalibrationBracket,

    #[error("root bracket expansion failed (internal error)")]
    BracketFailure,

    #[error("eigensolver did not converge: {0}")]
    EigenFailure(String),

    #[error("ground-state fit residual {residual:.3e} exceeds threshold {threshold:.3e}: not a ground state")]
    NotAGroundState { residual: f64, threshold: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("report resolution mismatch: {0}")]
    ResolutionMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
