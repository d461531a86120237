use thiserror::Error;

#[derive(Debug, Error)]
pub enum RatioError {
    #[error("argument outside supported domain: {0}")]
    Domain(String),
    #[error("hypergeometric series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("invalid rotation-profile parameter: {0}")]
    InvalidTheta(String),
}
