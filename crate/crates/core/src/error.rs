use std::path::PathBuf;

/// Errors surfaced by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not hermitian: asymmetry {asymmetry:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix order must be at least 1")]
    EmptyMatrix,

    #[error("pencil needs at least one coefficient matrix")]
    EmptyPencil,

    #[error("operation requires k = {expected} coefficient matrices, pencil has k = {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("vector is not normalized: |norm - 1| = {deviation:.3e}")]
    NotUnit { deviation: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("grid size must be at least {min}, got {got}")]
    GridTooSmall { min: usize, got: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("invalid plot spec: {0}")]
    InvalidPlot(String),

    #[error("write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
