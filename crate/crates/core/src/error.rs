use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tensor shape: order {order}, dim {dim} (need order >= 2, dim >= 1)")]
    InvalidShape { order: usize, dim: usize },

    #[error("index {idx:?} out of range for dimension {dim}")]
    IndexOutOfRange { idx: Vec<usize>, dim: usize },

    #[error("index tuple {idx:?} has {found} entries, tensor order is {order}")]
    IndexArity {
        idx: Vec<usize>,
        order: usize,
        found: usize,
    },

    #[error("conflicting values {first} and {second} for the symmetry orbit of {idx:?}")]
    ConflictingOrbit {
        idx: Vec<usize>,
        first: f64,
        second: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("vector has non-negligible imaginary part ({max_imag:e})")]
    NotReal { max_imag: f64 },

    #[error("polynomial has zero leading coefficient or degree 0")]
    DegeneratePolynomial,

    #[error("root finder did not converge after {iterations} iterations")]
    RootsNotConverged { iterations: usize },

    #[error("no eigenvector consistent with lambda = {lambda} (best residual {residual:e})")]
    NotAnEigenvalue { lambda: String, residual: f64 },

    #[error("power iteration produced a zero vector; increase the shift magnitude")]
    ZeroIterate,

    #[error("none of the power iteration runs converged")]
    NoConvergedRun,

    #[error("{what} requires {requirement}")]
    Unsupported {
        what: &'static str,
        requirement: &'static str,
    },

    #[error("problem too large: expected eigenvalue count {count} exceeds limit {limit}")]
    Intractable { count: usize, limit: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
