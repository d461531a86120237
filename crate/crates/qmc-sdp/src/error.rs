use thiserror::Error;

#[derive(Debug, Error)]
pub enum SdpError {
    #[error("relaxation level must be at least 1, got {0}")]
    BadLevel(usize),
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("solver did not converge: {0}")]
    NoConvergence(String),
    #[error("moment matrix is indefinite beyond tolerance: min eigenvalue {0:.3e}")]
    Indefinite(f64),
    #[error("pauli layer error: {0}")]
    Pauli(#[from] qmc_pauli::PauliError),
    #[error("graph layer error: {0}")]
    Graph(#[from] qmc_graph::GraphError),
    #[error("{0}")]
    InvalidInput(String),
}
