use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Error, Clone)]
pub enum Error {
    #[error("series did not converge after {terms} terms (partial sum {partial})")]
    SeriesFailure { partial: Complex64, terms: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid model parameters: {0}")]
    Params(String),

    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),

    #[error("singular gauge: {0}")]
    SingularGauge(String),

    #[error("singular weight: {0}")]
    SingularWeight(String),

    #[error("Hilbert space dimension {dim} exceeds cap {cap}")]
    SizeCap { dim: usize, cap: usize },

    #[error("Newton iteration did not converge: {message}")]
    Convergence { message: String, trace: Vec<f64> },

    #[error("degenerate solution: {message}")]
    DegenerateSolution { message: String, trace: Vec<f64> },

    #[error("pole: {0}")]
    Pole(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
