use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("invalid quadratic form [{0},{1},{2}]: {3}")]
    InvalidForm(i64, i64, i64, String),

    #[error("matrix is not hyperbolic: |trace| = {0} <= 2")]
    NotHyperbolic(i64),

    #[error("no totally positive generator found for ideal of norm {norm} within search bound {bound}")]
    GeneratorNotFound { norm: i128, bound: i128 },

    #[error("ideal data inconsistent: {0}")]
    IdealInconsistency(String),

    #[error("coefficient table too short: need lambda_f up to {required}, file provides {available}")]
    CoefficientShortfall { required: usize, available: usize },

    #[error("form file schema violation: {0}")]
    SchemaViolation(String),

    #[error("Hecke relation check failed at (m, n) = ({m}, {n}): residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    HeckeRelationViolation { m: usize, n: usize, residual: f64, tol: f64 },

    #[error("quadrature failed to converge: {0}")]
    QuadratureFailure(String),

    #[error("evaluation at a pole or outside the domain: {0}")]
    DomainError(String),

    #[error("configuration error: {0}")]
    ConfigError(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
