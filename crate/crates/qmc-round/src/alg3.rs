use crate::error::RoundError;
use crate::types::{EdgeDiag, EnergyBreakdown, RoundedOutcome, Winner};
use qmc_graph::{bipartition, WeightedGraph};
use qmc_pauli::{
    apply_two_pauli_rotation, expectation, hamiltonian_terms, Letter, PauliString, StateVector,
};
use qmc_ratio::ThetaSpec;
use qmc_sdp::{edge_values, solve_sdp};

#[derive(Debug, Clone, Copy)]
pub struct Alg3Params {
    pub theta: ThetaSpec,
    /// Edge-value crossover: larger edge values switch to the saturated
    /// rotation. Must lie in [sqrt(3)/2, 1].
    pub h_max: f64,
    /// Saturated rotation strength in [0, 1].
    pub theta_star: f64,
    pub k: usize,
    pub tol: f64,
}

impl Alg3Params {
    /// The published parameter point: linear profile 0.367, crossover
    /// 0.876, saturated strength 2/5.
    pub fn published() -> Self {
        Alg3Params {
            theta: ThetaSpec::Linear(0.367),
            h_max: 0.876,
            theta_star: 0.4,
            k: 2,
            tol: 1e-7,
        }
    }
}

/// Deterministic bipartite entangling rounding: start from the cut product
/// state of the bipartition, then rotate every edge by
/// `exp(i/2 theta_e Y_i X_j)` with the Y factor on side 0. Edge angles
/// follow the profile below the crossover and saturate above it.
pub fn algorithm3(graph: &WeightedGraph, params: Alg3Params) -> Result<RoundedOutcome, RoundError> {
    let n = graph.n();
    if n > 14 {
        return Err(RoundError::TooManySites(n));
    }
    let sqrt3_half = 3.0f64.sqrt() / 2.0;
    if !(sqrt3_half..=1.0).contains(&params.h_max) {
        return Err(RoundError::BadParameter(format!(
            "h_max must lie in [sqrt(3)/2, 1], got {}",
            params.h_max
        )));
    }
    if !(0.0..=1.0).contains(&params.theta_star) {
        return Err(RoundError::BadParameter(format!(
            "theta_star must lie in [0, 1], got {}",
            params.theta_star
        )));
    }
    if !params.theta.is_member(1e-2) {
        return Err(RoundError::ThetaNotAdmissible);
    }
    let sides = bipartition(graph).ok_or(RoundError::NotBipartite)?;

    let sol = solve_sdp(graph, params.k, params.tol)?;
    let vals = edge_values(&sol, graph)?;

    let thetas: Vec<f64> = vals
        .h
        .iter()
        .zip(&vals.h_plus)
        .map(|(&h, &hp)| {
            if h <= params.h_max {
                params.theta.eval(hp).clamp(0.0, 1.0).sqrt().asin()
            } else {
                params.theta_star.clamp(0.0, 1.0).sqrt().asin()
            }
        })
        .collect();

    // Cut product state: side-1 vertices start in |1>.
    let mut index = 0usize;
    for v in 0..n {
        if sides.side(v) == 1 {
            index |= 1 << v;
        }
    }
    let mut state = StateVector::basis(n, index)?;
    for (e, &(i, j, _)) in graph.edges().iter().enumerate() {
        if thetas[e] == 0.0 {
            continue;
        }
        // Y acts on the side-0 endpoint, X on the side-1 endpoint.
        let (y_site, x_site) = if sides.side(i) == 0 { (i, j) } else { (j, i) };
        let word = PauliString::two_site(n, y_site, Letter::Y, x_site, Letter::X)?;
        state = apply_two_pauli_rotation(&state, &word, thetas[e])?;
    }

    let h = hamiltonian_terms(graph)?;
    let energy = expectation(&state, &h)?;
    let edges = (0..graph.num_edges())
        .map(|e| EdgeDiag {
            h: vals.h[e],
            h_plus: vals.h_plus[e],
            theta: Some(thetas[e]),
            gamma_prime: None,
            matched: None,
            phase_degenerate: None,
        })
        .collect();
    Ok(RoundedOutcome {
        winner: Winner::Entangled,
        energy,
        energies: EnergyBreakdown {
            product: None,
            matching: 0.0,
            entangled: Some(energy),
        },
        edges,
        blochs: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_odd_cycles() {
        let c5 = WeightedGraph::cycle(5);
        assert!(matches!(
            algorithm3(&c5, Alg3Params::published()),
            Err(RoundError::NotBipartite)
        ));
    }

    #[test]
    fn single_edge_saturates() {
        // The relaxation gives h = 1 > h_max, so theta = arcsin sqrt(2/5)
        // and the energy is 2 + 2 sqrt(0.4).
        let k2 = WeightedGraph::unit(2, &[(0, 1)]).unwrap();
        let out = algorithm3(&k2, Alg3Params::published()).unwrap();
        assert_relative_eq!(out.energy, 2.0 + 2.0 * 0.4f64.sqrt(), epsilon = 1e-6);
        let ratio = out.energy / 4.0;
        assert!((ratio - 0.8162).abs() < 1e-3);
    }

    #[test]
    fn zero_angles_give_cut_energy() {
        // A zero profile with theta_star = 0 leaves the cut product state;
        // every cut edge has <01| H_e |01> = 2, so the energy is twice the
        // total weight.
        let c4 = WeightedGraph::cycle(4);
        let mut params = Alg3Params::published();
        params.theta = ThetaSpec::Linear(0.0);
        params.theta_star = 0.0;
        let out = algorithm3(&c4, params).unwrap();
        assert_relative_eq!(out.energy, 8.0, epsilon = 1e-6);
    }

    #[test]
    fn beats_published_ratio_on_small_bipartite_graphs() {
        for g in [
            WeightedGraph::cycle(4),
            WeightedGraph::cycle(6),
            WeightedGraph::path(5),
            WeightedGraph::star(4),
        ] {
            let out = algorithm3(&g, Alg3Params::published()).unwrap();
            let top = qmc_pauli::lambda_max(&g).unwrap();
            let ratio = out.energy / top;
            assert!(
                ratio >= 0.8162 - 1e-3,
                "ratio {ratio} on {} vertices",
                g.n()
            );
        }
    }
}
