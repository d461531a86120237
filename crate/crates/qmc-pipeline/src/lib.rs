//! Orchestration layer: the census verification pipeline over graph6
//! streams, the certificate suites, and algorithm runs with JSON reports.
//! The `qmc` binary is a thin wrapper over this crate.

mod certify;
mod error;
mod pipeline;
mod runner;

pub use certify::{run_certificates, CertificateKind, CertificateReport};
pub use error::PipelineError;
pub use pipeline::{
    run_verification, CertifyMethod, GraphRecord, PipelineConfig, PipelineReport, StageCounts,
    Verdict,
};
pub use runner::{run_algorithm_on_graph, AlgorithmRun, RunReport};

/// Bundled censuses of all isomorphism classes on tiny orders, embedded so
/// the certificate suites are self-contained.
pub fn bundled_census(n: usize) -> Option<&'static str> {
    match n {
        2 => Some(include_str!("../fixtures/graphs2.g6")),
        3 => Some(include_str!("../fixtures/graphs3.g6")),
        4 => Some(include_str!("../fixtures/graphs4.g6")),
        5 => Some(include_str!("../fixtures/graphs5.g6")),
        6 => Some(include_str!("../fixtures/graphs6.g6")),
        _ => None,
    }
}

/// Default tolerance, overridable through the `QMC_TOL` environment
/// variable.
pub fn default_tol() -> f64 {
    std::env::var("QMC_TOL")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1e-7)
}
