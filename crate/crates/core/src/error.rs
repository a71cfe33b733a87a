use thiserror::Error;

/// Errors raised by the library. Residuals are widened to `f64` so the enum
/// does not depend on the scalar type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrbitError {
    #[error("shape mismatch: {0}")]
    InputShape(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("format error in `{field}`: {message}")]
    Format { field: String, message: String },

    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k}): residual {residual:.3e}")]
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        residual: f64,
    },

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("algorithm failure: {0}")]
    AlgorithmFailure(String),

    #[error("Cartan involution rejected, `{invariant}` fails with residual {residual:.3e}")]
    CartanValidation { invariant: String, residual: f64 },

    #[error("ambiguous eigenvalue clustering: {0}")]
    Clustering(String),

    #[error("covector is not regular: {0}")]
    NotRegular(String),

    #[error("degenerate inner product: smallest eigenvalue {min_eigenvalue:.3e}")]
    Degenerate { min_eigenvalue: f64 },

    #[error("stratum label inconsistent: {0}")]
    Stratum(String),

    #[error("ill-conditioned metric: condition number {0:.3e}")]
    Conditioning(f64),
}

pub type Result<T> = std::result::Result<T, OrbitError>;
