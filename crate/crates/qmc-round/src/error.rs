use thiserror::Error;

#[derive(Debug, Error)]
pub enum RoundError {
    #[error("input graph contains a triangle; this rounding requires triangle-free input")]
    NotTriangleFree,
    #[error("input graph is not bipartite")]
    NotBipartite,
    #[error("rotation profile failed the admissibility test")]
    ThetaNotAdmissible,
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("instance too large for exact state evaluation: {0} sites (cap 14)")]
    TooManySites(usize),
    #[error("relaxation error: {0}")]
    Sdp(#[from] qmc_sdp::SdpError),
    #[error("pauli layer error: {0}")]
    Pauli(#[from] qmc_pauli::PauliError),
    #[error("ratio layer error: {0}")]
    Ratio(#[from] qmc_ratio::RatioError),
}
