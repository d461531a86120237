use thiserror::Error;

#[derive(Debug, Error)]
pub enum PauliError {
    #[error("site count mismatch: {0} vs {1}")]
    SiteMismatch(usize, usize),
    #[error("site index {site} out of range for {n} sites")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("at most 64 sites are supported, got {0}")]
    TooManySites(usize),
    #[error("state dimension {dim} does not match {n} sites")]
    DimensionMismatch { dim: usize, n: usize },
    #[error("state is not normalized: |norm - 1| = {0:.3e}")]
    NotNormalized(f64),
    #[error("Bloch vector {index} is not unit length: |norm - 1| = {error:.3e}")]
    NotUnitBloch { index: usize, error: f64 },
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("{0}")]
    InvalidInput(String),
}
