use crate::error::PauliError;
use crate::hamiltonian::{hamiltonian_terms, HamiltonianTerms};
use nalgebra::{DMatrix, DVector};
use qmc_graph::WeightedGraph;

/// Route used for an exact largest-eigenvalue computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigMethod {
    /// Dense symmetric eigendecomposition of the full 2^n matrix.
    Dense,
    /// Matrix-free Lanczos with full reorthogonalization.
    Lanczos,
}

/// Largest eigenvalue of the graph Hamiltonian.
///
/// Dense for n <= 8, Lanczos for 9 <= n <= 14, error beyond. Relative
/// accuracy is 1e-9 on the scale of the coefficient norm.
pub fn lambda_max(graph: &WeightedGraph) -> Result<f64, PauliError> {
    let n = graph.n();
    if n <= 8 {
        lambda_max_via(graph, EigMethod::Dense)
    } else if n <= 14 {
        lambda_max_via(graph, EigMethod::Lanczos)
    } else {
        Err(PauliError::InstanceTooLarge(format!(
            "exact eigensolve caps at 14 sites, got {n}"
        )))
    }
}

/// Largest eigenvalue via an explicitly chosen route (for cross-checks).
pub fn lambda_max_via(graph: &WeightedGraph, method: EigMethod) -> Result<f64, PauliError> {
    let n = graph.n();
    if graph.edges().is_empty() {
        return Ok(0.0);
    }
    let h = hamiltonian_terms(graph)?;
    match method {
        EigMethod::Dense => {
            if n > 10 {
                return Err(PauliError::InstanceTooLarge(format!(
                    "dense eigensolve caps at 10 sites, got {n}"
                )));
            }
            let m = h.dense_real()?;
            let eig = m.symmetric_eigen();
            Ok(eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        }
        EigMethod::Lanczos => {
            if n > 14 {
                return Err(PauliError::InstanceTooLarge(format!(
                    "Lanczos eigensolve caps at 14 sites, got {n}"
                )));
            }
            Ok(lanczos_largest(&h))
        }
    }
}

/// Incremental upper bound for a stream of nearby graphs: the next largest
/// eigenvalue is at most the previous one plus the largest eigenvalue of the
/// added edge terms (removed edges only lower it, since every edge term is
/// positive semidefinite).
///
/// The added-edge operator is bounded by `4 * sum(w)` in general and by
/// `2 * sum(w) + 2 * max(w)` when the added edges form a star, which is the
/// exact value of a star Hamiltonian at unit weights.
pub fn lambda_max_upper_from_delta(prev: f64, added_edges: &[(usize, usize, f64)]) -> f64 {
    if added_edges.is_empty() {
        return prev;
    }
    let total: f64 = added_edges.iter().map(|e| e.2).sum();
    let generic = 4.0 * total;
    let bound = if let Some(center) = star_center(added_edges) {
        let _ = center;
        let max_w = added_edges.iter().map(|e| e.2).fold(0.0f64, f64::max);
        (2.0 * total + 2.0 * max_w).min(generic)
    } else {
        generic
    };
    prev + bound
}

/// Common vertex of all edges, if one exists.
fn star_center(edges: &[(usize, usize, f64)]) -> Option<usize> {
    let (a, b, _) = edges[0];
    for cand in [a, b] {
        if edges.iter().all(|&(i, j, _)| i == cand || j == cand) {
            return Some(cand);
        }
    }
    None
}

/// Lanczos iteration with full reorthogonalization returning the largest
/// Ritz value.
///
/// An invariant-subspace breakdown means the start vector missed part of
/// the space (possible on highly symmetric graphs), so further passes
/// restart from fresh deterministic vectors deflated against everything
/// already explored until a pass converges without breakdown or the space
/// is exhausted.
fn lanczos_largest(h: &HamiltonianTerms) -> f64 {
    let dim = 1usize << h.n();
    let scale = h.coefficient_norm();
    if scale == 0.0 {
        return 0.0;
    }
    let tol = 1e-9 * scale;

    let mut explored: Vec<Vec<f64>> = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for pass in 0..6 {
        if explored.len() >= dim {
            break;
        }
        let mut start = hashed_start(dim, pass);
        for q in &explored {
            let overlap = dot(q, &start);
            axpy(&mut start, -overlap, q);
        }
        if norm(&start) < 1e-8 {
            continue;
        }
        let max_iter = 200.min(dim - explored.len());
        let outcome = lanczos_pass(h, &start, max_iter, &mut explored);
        best = best.max(outcome.ritz);
        if outcome.residual < tol && !outcome.breakdown {
            break;
        }
    }
    best
}

fn hashed_start(dim: usize, pass: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..dim)
        .map(|i| {
            let mut z = (i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
                ^ (pass as u64 + 1).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect();
    normalize(&mut v);
    v
}

struct PassOutcome {
    ritz: f64,
    residual: f64,
    breakdown: bool,
}

/// One Lanczos sweep. New basis vectors are appended to `explored` and the
/// sweep stays orthogonal to everything already there, so successive
/// sweeps decompose the space.
fn lanczos_pass(
    h: &HamiltonianTerms,
    start: &[f64],
    max_iter: usize,
    explored: &mut Vec<Vec<f64>>,
) -> PassOutcome {
    let dim = start.len();
    let offset = explored.len();
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();

    let mut q = start.to_vec();
    normalize(&mut q);
    explored.push(q);
    let mut w = vec![0.0; dim];
    let mut breakdown = false;

    for j in 0..max_iter {
        h.matvec_real(&explored[offset + j], &mut w);
        let a = dot(&explored[offset + j], &w);
        alpha.push(a);
        // Full reorthogonalization against every explored vector keeps the
        // basis numerically orthogonal and deflates previous sweeps; the
        // second sweep removes the residue classical Gram-Schmidt leaves.
        for _ in 0..2 {
            for q in explored.iter() {
                let overlap = dot(q, &w);
                axpy(&mut w, -overlap, q);
            }
        }
        let b = norm(&w);
        if b < 1e-13 * h.coefficient_norm().max(1.0) {
            breakdown = true;
            break;
        }
        if j + 1 == max_iter {
            beta.push(b);
            break;
        }
        beta.push(b);
        let mut next = w.clone();
        for a in &mut next {
            *a /= b;
        }
        explored.push(next);
    }

    let m = alpha.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i > 0 {
            t[(i, i - 1)] = beta[i - 1];
            t[(i - 1, i)] = beta[i - 1];
        }
    }
    let eig = t.symmetric_eigen();
    let (idx, &ritz) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite eigenvalues"))
        .expect("at least one Ritz value");

    // Residual bound |beta_m * s_m| for the top Ritz pair; zero after an
    // invariant-subspace breakdown (the subspace top is exact).
    let s = eig.eigenvectors.column(idx);
    let residual = if breakdown || m == 0 || beta.len() < m {
        0.0
    } else {
        (beta[m - 1] * s[m - 1]).abs()
    };
    PassOutcome {
        ritz,
        residual,
        breakdown,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn normalize(v: &mut [f64]) {
    let n = norm(v);
    if n > 0.0 {
        for a in v.iter_mut() {
            *a /= n;
        }
    }
}

/// Rayleigh quotient helper used by tests: `v^T H v / v^T v`.
#[allow(dead_code)]
fn rayleigh(h: &HamiltonianTerms, v: &[f64]) -> f64 {
    let mut w = vec![0.0; v.len()];
    h.matvec_real(v, &mut w);
    dot(v, &w) / dot(v, v)
}

#[allow(dead_code)]
fn to_dvector(v: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(v)
}
