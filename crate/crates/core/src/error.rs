use thiserror::Error;

/// Errors shared by every computation in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("configuration is not neutral (total charge {0})")]
    Neutrality(i64),
    #[error("displacement ({dx}, {dy}) outside kernel table range {max_range}")]
    Coverage { dx: i64, dy: i64, max_range: usize },
    #[error("not converged after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },
    #[error("insufficient resolution: {0}")]
    Resolution(String),
    #[error("Hilbert dimension {dim} exceeds limit {limit}")]
    Capacity { dim: usize, limit: usize },
    #[error("ambiguous readout: {0}")]
    Ambiguous(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

pub(crate) fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {v}")))
    }
}
