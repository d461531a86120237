use crate::alg1::{prepare, product_rounding, SolvedForRounding};
use crate::error::RoundError;
use crate::local::{arg_or_zero, bloch_to_qubit, vertex_flip, VertexFlip};
use crate::rng::RngStream;
use crate::types::{EdgeDiag, EnergyBreakdown, RoundedOutcome, Winner};
use num_complex::Complex64;
use qmc_graph::{is_triangle_free, max_weight_matching_on_edges, WeightedGraph};
use qmc_pauli::{
    apply_single_qubit, expectation, hamiltonian_terms, matching_state_energy, StateVector,
};
use qmc_ratio::{q, ThetaSpec};

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct Alg2Params {
    pub k: usize,
    pub tol: f64,
    /// Admissible rotation profile mapping `h+` to the rotation strength.
    pub theta: ThetaSpec,
}

impl Alg2Params {
    pub fn new(theta: ThetaSpec) -> Self {
        Alg2Params {
            k: 2,
            tol: 1e-7,
            theta,
        }
    }
}

/// Steering phase for a matched edge: the value of `phi_j` making the edge
/// angle hit the right angle, `phi_j = (pi/2 - arg(T) - phi_i) mod 2 pi`,
/// where `T` is the product of the two cross matrix elements. A vanishing
/// element makes the angle phase-independent; the `arg(0) = 0` convention
/// applies and the edge is flagged.
pub fn solve_phi_for_right_angle(
    flip_i: &VertexFlipView,
    flip_j: &VertexFlipView,
    phi_i: f64,
) -> (f64, bool) {
    let t = cross_product_element(flip_i, flip_j);
    if t.norm() < 1e-14 {
        return (0.0, true);
    }
    let phi_j = (PI / 2.0 - arg_or_zero(t) - phi_i).rem_euclid(2.0 * PI);
    (phi_j, false)
}

/// Public view of the per-vertex flip operator (ket and flip target).
pub struct VertexFlipView {
    pub(crate) inner: VertexFlip,
}

/// `T_ij = <xi_i| P_j |xi_j> * <xi_j| P_i |xi_i>` (phases excluded).
fn cross_product_element(i: &VertexFlipView, j: &VertexFlipView) -> Complex64 {
    // P_j |xi_j> = c_j |xi_perp_j}>, so <xi_i|P_j|xi_j> = c_j <xi_i|xi_perp_j>.
    let bra_i_perp_j = i.inner.ket[0].conj() * j.inner.ket_perp[0]
        + i.inner.ket[1].conj() * j.inner.ket_perp[1];
    let bra_j_perp_i = j.inner.ket[0].conj() * i.inner.ket_perp[0]
        + j.inner.ket[1].conj() * i.inner.ket_perp[1];
    j.inner.c * bra_i_perp_j * i.inner.c * bra_j_perp_i
}

/// Triangle-free entangling rounding.
///
/// Draws a product state from the relaxation, then entangles every edge by
/// the involution rotation `exp(i/2 sgn(gamma) theta_e M_i M_j)`, where the
/// per-vertex Hermitian involutions `M_i` carry steering phases: edges of a
/// maximum-weight matching on the modified weights get their angle steered
/// to a right angle, all other phases are drawn uniformly. Returns the
/// better of the entangled state and the matching state.
pub fn algorithm2(
    graph: &WeightedGraph,
    params: Alg2Params,
    rng: &mut RngStream,
) -> Result<RoundedOutcome, RoundError> {
    let ctx = prepare(graph, params.k, params.tol)?;
    algorithm2_with(&ctx, graph, &params, rng)
}

pub(crate) fn algorithm2_with(
    ctx: &SolvedForRounding,
    graph: &WeightedGraph,
    params: &Alg2Params,
    rng: &mut RngStream,
) -> Result<RoundedOutcome, RoundError> {
    let n = graph.n();
    if n > 14 {
        return Err(RoundError::TooManySites(n));
    }
    if !is_triangle_free(graph) {
        return Err(RoundError::NotTriangleFree);
    }
    if !params.theta.is_member(1e-2) {
        return Err(RoundError::ThetaNotAdmissible);
    }
    let theta_fn = &params.theta;
    let vals = &ctx.vals;

    // Product state and per-vertex flip operators.
    let blochs = product_rounding(&ctx.gram, rng);
    let locals: Vec<_> = blochs.iter().map(|&u| bloch_to_qubit(u)).collect();
    let flips: Vec<VertexFlipView> = locals
        .iter()
        .map(|l| VertexFlipView {
            inner: vertex_flip(l),
        })
        .collect();

    // Rotation angles from the profile; arcsin arguments are clipped
    // against solver slop.
    let thetas: Vec<f64> = vals
        .h_plus
        .iter()
        .map(|&hp| theta_fn.eval(hp).clamp(0.0, 1.0).sqrt().asin())
        .collect();

    // Maximum-weight matching on the modified weights steers the phases.
    let modified: Vec<(usize, usize, f64)> = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(i, j, w))| {
            let hp = vals.h_plus[e];
            let inner = (theta_fn.eval(hp) * (1.0 - theta_fn.eval(1.0 - hp))).max(0.0);
            let wt = w * q(vals.h[e].clamp(-1.0, 1.0)).unwrap_or(0.0) * inner.sqrt();
            (i, j, wt.max(0.0))
        })
        .collect();
    let steered = max_weight_matching_on_edges(n, &modified);

    // Phases: unmatched vertices uniform; matched edges steered.
    let mut phi = vec![0.0f64; n];
    let mut vertex_matched = vec![false; n];
    for (e, &(i, j, _)) in graph.edges().iter().enumerate() {
        if steered[e] {
            vertex_matched[i] = true;
            vertex_matched[j] = true;
        }
    }
    for (v, phi_v) in phi.iter_mut().enumerate() {
        if !vertex_matched[v] {
            *phi_v = rng.uniform_angle();
        }
    }
    let mut degenerate = vec![false; graph.num_edges()];
    for (e, &(i, j, _)) in graph.edges().iter().enumerate() {
        if steered[e] {
            phi[i] = rng.uniform_angle();
            let (phi_j, flag) = solve_phi_for_right_angle(&flips[i], &flips[j], phi[i]);
            phi[j] = phi_j;
            degenerate[e] = flag;
        }
    }

    // Edge angles gamma in (-pi, pi] and their folded versions in [0, pi].
    let mut gammas = Vec::with_capacity(graph.num_edges());
    let mut gamma_primes = Vec::with_capacity(graph.num_edges());
    for &(i, j, _) in graph.edges() {
        let t = cross_product_element(&flips[i], &flips[j]);
        let gamma = if t.norm() < 1e-14 {
            PI
        } else {
            let rotated = Complex64::from_polar(1.0, phi[i] + phi[j]) * t;
            PI - arg_or_zero(rotated)
        };
        let gamma_prime = if gamma >= 0.0 { gamma } else { gamma + PI };
        gammas.push(gamma);
        gamma_primes.push(gamma_prime);
    }

    // Entangled state: commuting two-site involution rotations applied to
    // the product state.
    let kets: Vec<[Complex64; 2]> = locals.iter().map(|l| l.ket).collect();
    let mut state = StateVector::product(&kets)?;
    for (e, &(i, j, _)) in graph.edges().iter().enumerate() {
        if thetas[e] == 0.0 {
            continue;
        }
        let sign = if gammas[e] >= 0.0 { 1.0 } else { -1.0 };
        let m_i = flips[i].inner.hermitian_flip(phi[i]);
        let m_j = flips[j].inner.hermitian_flip(phi[j]);
        let mm = apply_single_qubit(&apply_single_qubit(&state, i, &m_i)?, j, &m_j)?;
        let half = thetas[e] / 2.0;
        let cos = Complex64::new(half.cos(), 0.0);
        let isin = Complex64::new(0.0, sign * half.sin());
        let amps: Vec<Complex64> = state
            .amplitudes()
            .iter()
            .zip(mm.amplitudes())
            .map(|(&a, &b)| cos * a + isin * b)
            .collect();
        state = StateVector::from_amplitudes(n, amps)?;
    }

    let h = hamiltonian_terms(graph)?;
    let entangled = expectation(&state, &h)?;
    let matching_energy = matching_state_energy(graph, &ctx.matching)?;
    let (winner, energy) = if entangled >= matching_energy {
        (Winner::Entangled, entangled)
    } else {
        (Winner::Matching, matching_energy)
    };

    let edges = (0..graph.num_edges())
        .map(|e| EdgeDiag {
            h: vals.h[e],
            h_plus: vals.h_plus[e],
            theta: Some(thetas[e]),
            gamma_prime: Some(gamma_primes[e]),
            matched: Some(steered[e]),
            phase_degenerate: Some(degenerate[e]),
        })
        .collect();

    Ok(RoundedOutcome {
        winner,
        energy,
        energies: EnergyBreakdown {
            product: None,
            matching: matching_energy,
            entangled: Some(entangled),
        },
        edges,
        blochs: Some(blochs),
    })
}
