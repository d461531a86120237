use crate::error::PipelineError;
use qmc_graph::WeightedGraph;
use qmc_pauli::lambda_max;
use qmc_round::{
    empirical_ratio, RatioStats, RngStream, RoundedOutcome, RoundingAlgorithm,
};
use serde::Serialize;

/// Algorithm selection plus run parameters for the CLI.
#[derive(Debug, Clone, Copy)]
pub struct AlgorithmRun {
    pub algorithm: RoundingAlgorithm,
    pub seed: u64,
    pub seeds: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedOutcome {
    pub seed_index: usize,
    #[serde(flatten)]
    pub outcome: RoundedOutcome,
    /// Energy over the exact largest eigenvalue, when computable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub n: usize,
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_max: Option<f64>,
    pub outcomes: Vec<SeedOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<RatioStats>,
}

/// Runs a rounding algorithm for the requested number of seeds and collects
/// per-seed diagnostics plus ratio statistics against the exact spectrum
/// (when the instance is small enough to diagonalize).
pub fn run_algorithm_on_graph(
    graph: &WeightedGraph,
    run: AlgorithmRun,
) -> Result<RunReport, PipelineError> {
    let top = if graph.n() <= 14 && graph.num_edges() > 0 {
        Some(lambda_max(graph)?)
    } else {
        None
    };
    let seeds = run.seeds.max(1);
    let mut outcomes = Vec::with_capacity(seeds);
    for i in 0..seeds {
        let mut rng = RngStream::derive(run.seed, i as u64);
        let outcome = run.algorithm.run(graph, &mut rng)?;
        let ratio = top.map(|t| outcome.energy / t);
        outcomes.push(SeedOutcome {
            seed_index: i,
            outcome,
            ratio,
        });
    }
    let stats = if top.is_some() {
        Some(empirical_ratio(graph, run.algorithm, seeds, run.seed)?)
    } else {
        None
    };
    Ok(RunReport {
        n: graph.n(),
        edges: graph.num_edges(),
        lambda_max: top,
        outcomes,
        stats,
    })
}
