//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by graph construction, generation, estimation, and metrics.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An input violates a model assumption (e.g. negative filter coefficients).
    #[error("model assumption violated: {0}")]
    ModelAssumption(String),

    /// A spectral quantity required by the operation does not exist.
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    /// Iterative solver did not reach the requested tolerance.
    #[error("no convergence after {iterations} iterations (last residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    /// The sample bound is vacuous because kappa >= beta1.
    #[error("vacuous bound: kappa {kappa} >= beta1 {beta1}")]
    VacuousBound { kappa: f64, beta1: f64 },

    /// A vector that must be unit-norm is not.
    #[error("input vector is not unit norm (|u| = {norm})")]
    NotUnit { norm: f64 },

    /// Dimension mismatch between an accumulator and its input.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },

    /// Problem too large for the dense code path.
    #[error("matrix of size {n} exceeds dense limit {limit}")]
    SizeLimit { n: usize, limit: usize },

    /// Bundled data failed its integrity check.
    #[error("data error: {0}")]
    Data(String),

    /// Correlation is undefined for the given input.
    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    /// Numerical post-condition violated by a dense solver.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// Malformed text input (edge lists, signal files).
    #[error("parse error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
