use crate::error::RoundError;
use crate::rng::RngStream;
use crate::types::{EdgeDiag, EnergyBreakdown, RoundedOutcome, Winner};
use qmc_graph::{max_weight_matching, Matching, WeightedGraph};
use qmc_pauli::{matching_state_energy, product_state_energy};
use qmc_sdp::{edge_values, gram_vectors, solve_sdp, EdgeValues, GramVectors};

#[derive(Debug, Clone, Copy)]
pub struct Alg1Params {
    /// Relaxation level (2 by default; the certified prefactor follows it).
    pub k: usize,
    pub tol: f64,
}

impl Default for Alg1Params {
    fn default() -> Self {
        Alg1Params { k: 2, tol: 1e-7 }
    }
}

/// Gaussian hyperplane rounding of the Gram vectors: `u_i = R v_i / |R v_i|`
/// for one shared 3 x dim standard-normal matrix. Identical Gram vectors
/// map to identical Bloch vectors, antipodal ones to antipodal.
pub fn product_rounding(gram: &GramVectors, rng: &mut RngStream) -> Vec<[f64; 3]> {
    let dim = gram.vectors.first().map_or(0, Vec::len);
    loop {
        let r: Vec<[f64; 3]> = (0..dim)
            .map(|_| [rng.normal(), rng.normal(), rng.normal()])
            .collect();
        let mut blochs = Vec::with_capacity(gram.vectors.len());
        let mut degenerate = false;
        for v in &gram.vectors {
            let mut u = [0.0; 3];
            for (rv, &vv) in r.iter().zip(v) {
                u[0] += rv[0] * vv;
                u[1] += rv[1] * vv;
                u[2] += rv[2] * vv;
            }
            let norm = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
            if norm < 1e-12 {
                degenerate = true;
                break;
            }
            blochs.push([u[0] / norm, u[1] / norm, u[2] / norm]);
        }
        if !degenerate {
            return blochs;
        }
        // Probability-zero event: redraw the Gaussian matrix.
    }
}

/// Shared solve context, so repeated samples reuse one relaxation.
pub(crate) struct SolvedForRounding {
    pub vals: EdgeValues,
    pub gram: GramVectors,
    pub matching: Matching,
}

pub(crate) fn prepare(graph: &WeightedGraph, k: usize, tol: f64) -> Result<SolvedForRounding, RoundError> {
    let sol = solve_sdp(graph, k, tol)?;
    let vals = edge_values(&sol, graph)?;
    let gram = gram_vectors(&sol, 1e-6)?;
    let matching = max_weight_matching(graph);
    Ok(SolvedForRounding {
        vals,
        gram,
        matching,
    })
}

pub(crate) fn algorithm1_with(
    ctx: &SolvedForRounding,
    graph: &WeightedGraph,
    rng: &mut RngStream,
) -> Result<RoundedOutcome, RoundError> {
    let blochs = product_rounding(&ctx.gram, rng);
    let product = product_state_energy(graph, &blochs)?;
    let matching = matching_state_energy(graph, &ctx.matching)?;
    let (winner, energy) = if matching >= product {
        (Winner::Matching, matching)
    } else {
        (Winner::Product, product)
    };
    let edges = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(e, _)| EdgeDiag {
            h: ctx.vals.h[e],
            h_plus: ctx.vals.h_plus[e],
            theta: None,
            gamma_prime: None,
            matched: Some(ctx.matching.contains(e)),
            phase_degenerate: None,
        })
        .collect();
    Ok(RoundedOutcome {
        winner,
        energy,
        energies: EnergyBreakdown {
            product: Some(product),
            matching,
            entangled: None,
        },
        edges,
        blochs: Some(blochs),
    })
}

/// Product-versus-matching rounding: solve the relaxation, draw a product
/// state by Gaussian rounding of the Gram vectors, build the maximum-weight
/// matching state, and keep the better of the two.
pub fn algorithm1(
    graph: &WeightedGraph,
    params: Alg1Params,
    rng: &mut RngStream,
) -> Result<RoundedOutcome, RoundError> {
    let ctx = prepare(graph, params.k, params.tol)?;
    algorithm1_with(&ctx, graph, rng)
}
