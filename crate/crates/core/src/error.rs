use thiserror::Error;

/// Errors surfaced by the spectrahedron pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must have even degree, got degree {0}")]
    OddDegree(usize),
    #[error("polynomial is not nonnegative on the real line")]
    NotNonnegative,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("matrix is not positive semidefinite (lambda_min = {0:.3e})")]
    NotPsd(f64),
    #[error("starting point is not feasible: {0}")]
    InfeasibleStart(String),
    #[error("lift requires (a, b) != (0, 0)")]
    DegenerateLift,
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
