use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lambda must exceed -1/2 (got {0})")]
    InvalidLambda(f64),

    #[error("{0}")]
    Domain(String),

    #[error("power iteration did not converge after {iterations} iterations (relative residual {relative_residual:e}, eigenvalue estimate {eigenvalue})")]
    NoConvergence {
        iterations: usize,
        eigenvalue: f64,
        relative_residual: f64,
        eigenvector: Vec<f64>,
    },

    #[error("matrix is not positive definite (Cholesky pivot {pivot} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },

    #[error("no sign change of J_{nu} found on (0, {window}]")]
    BesselSearch { nu: f64, window: f64 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
