use thiserror::Error;

/// Errors raised by the oscillator, entanglement, covariant and parton routines.
#[derive(Debug, Error)]
pub enum OscError {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("unstable potential: |C| = {c} must be smaller than A = {a}")]
    UnstablePotential { a: f64, c: f64 },

    #[error("mass must be positive, got {0}")]
    InvalidMass(f64),

    #[error("invalid quadrature grid: {0}")]
    InvalidGrid(String),

    #[error("squeeze parameter {eta} outside supported range |eta| <= {max}")]
    EtaOutOfRange { eta: f64, max: f64 },

    #[error("grid under-resolves the Gaussian: {0}")]
    UnderResolved(String),

    #[error("zero-temperature limit: eta = 0 maps to T -> 0+")]
    ZeroTemperature,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: {msg}")]
    Validation { line: usize, msg: String },

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, OscError>;

pub(crate) fn finite(value: f64, what: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(OscError::NonFinite(what))
    }
}
