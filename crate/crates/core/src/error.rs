use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("holonomy parameter a = {0} must lie strictly inside (0, 1)")]
    InvalidHolonomy(f64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graded exponential did not converge: {0}")]
    ExpNonConvergence(String),

    #[error(
        "quadrature tolerance not met: error estimate {estimate:e} exceeds {tolerance:e} (value {value:e})"
    )]
    QuadratureTolerance {
        value: f64,
        estimate: f64,
        tolerance: f64,
    },

    #[error("Clausen series: tolerance {tol:e} needs {needed} terms, limit is {max_terms}")]
    ClausenTolerance {
        tol: f64,
        needed: f64,
        max_terms: usize,
    },

    #[error("metric variation has Fourier mode {mode} outside the stored range 1..={max}")]
    ModeOutOfRange { mode: i64, max: u32 },

    #[error("exactness residual {residual:e} exceeds {tolerance:e}")]
    ExactnessResidual { residual: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
