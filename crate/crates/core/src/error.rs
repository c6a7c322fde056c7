use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid layout: {0}")]
    Layout(String),

    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),

    #[error("subsystem label `{0}` occurs twice")]
    LabelCollision(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator is not Hermitian (max |M - M^dag| = {0:e})")]
    NotHermitian(f64),

    #[error("not a density operator: {0}")]
    NotAState(String),

    #[error("eigenvalue {0:e} is negative beyond tolerance")]
    NegativeEigenvalue(f64),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("dense dimension {dim} exceeds the cap of {cap}")]
    SizeCap { dim: usize, cap: usize },

    #[error("shield operator has trace norm {0}, expected 1")]
    NormViolation(f64),

    #[error("structure violation: {0}")]
    Structure(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
