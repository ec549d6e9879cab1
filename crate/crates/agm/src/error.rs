use thiserror::Error;

#[derive(Debug, Error)]
pub enum AgmError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}")]
    Asymmetric { asymmetry: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.6e})")]
    NotPsd { min_eig: f64 },

    #[error("exact enumeration would require {tuples} ordered tuples (cap {cap}); use monte-carlo")]
    EnumerationCapExceeded { tuples: u128, cap: u64 },

    #[error("integer overflow in exact polynomial arithmetic")]
    IntegerOverflow,

    #[error("frame invariant violated: {0}")]
    FrameInvariant(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, AgmError>;
