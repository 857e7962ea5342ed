//! Reaction-field recovery, error metrics, oscillation detection,
//! convergence orders and reference solutions.

mod field;
mod metrics;
mod reference;

use thiserror::Error;

pub use field::{element_row, reaction_field_1d, reaction_field_2d};
pub use metrics::{eoc, error_metrics, masked_peak_error, oscillation_index, ErrorReport};
pub use reference::{exact_1d, graded_grid, restrict_1d, restrict_2d, Exact1D, GradedSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PostError {
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("applied field magnitude must be nonzero")]
    ZeroScale,
    #[error("at least {min} samples required, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("grid does not cover [{lo}, {hi}]")]
    NotCovered { lo: f64, hi: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
