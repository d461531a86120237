use crate::alg1::{algorithm1_with, prepare, Alg1Params};
use crate::alg2::{algorithm2_with, Alg2Params};
use crate::alg3::{algorithm3, Alg3Params};
use crate::error::RoundError;
use crate::rng::RngStream;
use crate::types::RoundedOutcome;
use qmc_graph::WeightedGraph;
use qmc_pauli::lambda_max;
use serde::Serialize;

/// Algorithm selector with parameters.
#[derive(Debug, Clone, Copy)]
pub enum RoundingAlgorithm {
    MatchingProduct(Alg1Params),
    TriangleFree(Alg2Params),
    Bipartite(Alg3Params),
}

impl RoundingAlgorithm {
    pub fn run(
        &self,
        graph: &WeightedGraph,
        rng: &mut RngStream,
    ) -> Result<RoundedOutcome, RoundError> {
        match self {
            RoundingAlgorithm::MatchingProduct(p) => crate::alg1::algorithm1(graph, *p, rng),
            RoundingAlgorithm::TriangleFree(p) => crate::alg2::algorithm2(graph, *p, rng),
            RoundingAlgorithm::Bipartite(p) => algorithm3(graph, *p),
        }
    }
}

/// Monte-Carlo ratio statistics of a rounding algorithm against the exact
/// largest eigenvalue.
#[derive(Debug, Clone, Serialize)]
pub struct RatioStats {
    pub samples: usize,
    pub lambda_max: f64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Standard error of the mean ratio.
    pub stderr: f64,
}

/// Runs `samples` independent seeds (derived deterministically from `seed`)
/// and aggregates energy/lambda_max ratios. The relaxation is solved once
/// and shared across samples; the bipartite rounding is deterministic and
/// collapses to a single sample.
pub fn empirical_ratio(
    graph: &WeightedGraph,
    alg: RoundingAlgorithm,
    samples: usize,
    seed: u64,
) -> Result<RatioStats, RoundError> {
    let top = lambda_max(graph)?;
    if top <= 0.0 {
        return Err(RoundError::BadParameter(
            "ratio statistics need a graph with at least one edge".into(),
        ));
    }
    let ratios: Vec<f64> = match alg {
        RoundingAlgorithm::Bipartite(p) => {
            vec![algorithm3(graph, p)?.energy / top]
        }
        RoundingAlgorithm::MatchingProduct(p) => {
            let ctx = prepare(graph, p.k, p.tol)?;
            (0..samples.max(1))
                .map(|i| {
                    let mut rng = RngStream::derive(seed, i as u64);
                    algorithm1_with(&ctx, graph, &mut rng).map(|o| o.energy / top)
                })
                .collect::<Result<_, _>>()?
        }
        RoundingAlgorithm::TriangleFree(p) => {
            let ctx = prepare(graph, p.k, p.tol)?;
            (0..samples.max(1))
                .map(|i| {
                    let mut rng = RngStream::derive(seed, i as u64);
                    algorithm2_with(&ctx, graph, &p, &mut rng).map(|o| o.energy / top)
                })
                .collect::<Result<_, _>>()?
        }
    };
    let n = ratios.len();
    let mean = ratios.iter().sum::<f64>() / n as f64;
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let stderr = if n > 1 {
        let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        (var / n as f64).sqrt()
    } else {
        0.0
    };
    Ok(RatioStats {
        samples: n,
        lambda_max: top,
        mean,
        min,
        max,
        stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_ratio_is_one_with_zero_spread() {
        let g = WeightedGraph::unit(2, &[(0, 1)]).unwrap();
        let stats = empirical_ratio(
            &g,
            RoundingAlgorithm::MatchingProduct(Alg1Params::default()),
            16,
            7,
        )
        .unwrap();
        assert!((stats.mean - 1.0).abs() < 1e-9);
        assert!(stats.stderr < 1e-12);
    }

    #[test]
    fn bipartite_is_single_sample() {
        let c4 = WeightedGraph::cycle(4);
        let stats = empirical_ratio(
            &c4,
            RoundingAlgorithm::Bipartite(Alg3Params::published()),
            100,
            3,
        )
        .unwrap();
        assert_eq!(stats.samples, 1);
        assert!(stats.mean >= 0.8162 - 1e-3);
    }
}
