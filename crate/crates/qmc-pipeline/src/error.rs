use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("graph stream error at record {index}: {source}")]
    Stream {
        index: usize,
        source: qmc_graph::GraphError,
    },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("incremental bound {bound} fell below the exact value {exact} at record {index}")]
    UnsoundBound {
        index: usize,
        bound: f64,
        exact: f64,
    },
    #[error("graph error: {0}")]
    Graph(#[from] qmc_graph::GraphError),
    #[error("pauli error: {0}")]
    Pauli(#[from] qmc_pauli::PauliError),
    #[error("sdp error: {0}")]
    Sdp(#[from] qmc_sdp::SdpError),
    #[error("ratio error: {0}")]
    Ratio(#[from] qmc_ratio::RatioError),
    #[error("rounding error: {0}")]
    Round(#[from] qmc_round::RoundError),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl PipelineError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        PipelineError::Io {
            path: path.into(),
            source,
        }
    }
}
