//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor invariant was violated. The message names the invariant.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Two signals or specs live on different grids.
    #[error("grid mismatch: expected dims {expected:?}, got {got:?}")]
    GridMismatch {
        expected: Vec<usize>,
        got: Vec<usize>,
    },

    /// Per-axis lists of unequal length.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A scalar argument fell outside its admissible interval.
    #[error("domain error: {0}")]
    Domain(String),

    /// A dense-assembly size cap was exceeded.
    #[error("capacity exceeded: {what} = {requested} > cap {cap}; {hint}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
        hint: &'static str,
    },

    /// eig_symmetric was handed a matrix that is not symmetric within 1e-12.
    #[error("contract violation: input matrix asymmetric, max |A - A^T| = {deviation:.3e}")]
    AsymmetricInput { deviation: f64 },

    /// An eigenvalue escaped [-1e-10, 1 + 1e-10] before clamping.
    #[error("eigenvalue excursion: {value:.17e} outside [-{tol:.1e}, 1 + {tol:.1e}]")]
    EigenExcursion { value: f64, tol: f64 },

    /// The eigensolver failed to converge or missed its accuracy bar.
    #[error("eigensolver failure: {0}")]
    Solver(String),
}
