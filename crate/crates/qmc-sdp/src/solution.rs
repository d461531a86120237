use crate::basis::{moment_basis, MomentBasis};
use crate::error::SdpError;
use crate::ipm::{solve_ipm, IpmResult, SolveStatus};
use crate::problem::{assemble, VariableModel};
use crate::structure::build_moment_structure;
use nalgebra::DMatrix;
use qmc_graph::WeightedGraph;
use qmc_pauli::{lambda_max, Letter, PauliString};

/// Default relative duality-gap tolerance.
pub const DEFAULT_TOL: f64 = 1e-7;
const MAX_ITER: usize = 120;

/// A solved moment relaxation: the realized PSD moment matrix, the optimal
/// objective, and accessors for individual moments.
pub struct SdpSolution {
    n: usize,
    k: usize,
    model: VariableModel,
    basis: MomentBasis,
    moment_matrix: DMatrix<f64>,
    objective: f64,
    gap: f64,
    primal_residual: f64,
    iterations: usize,
    status: SolveStatus,
}

impl SdpSolution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn model(&self) -> VariableModel {
        self.model
    }

    pub fn basis(&self) -> &MomentBasis {
        &self.basis
    }

    /// The realized moment matrix (identity diagonal, PSD up to solver
    /// tolerance).
    pub fn moment_matrix(&self) -> &DMatrix<f64> {
        &self.moment_matrix
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// Achieved relative duality gap.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn primal_residual(&self) -> f64 {
        self.primal_residual
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn status(&self) -> SolveStatus {
        self.status
    }

    /// Moment of a degree-<= 2 word, read from the realized matrix.
    pub fn moment(&self, word: &PauliString) -> Result<f64, SdpError> {
        if word.is_identity() {
            return Ok(1.0);
        }
        if let Some(idx) = self.basis.position(word) {
            return Ok(self.moment_matrix[(0, idx)]);
        }
        // Degree-2 words at level 1 appear as products of two singles.
        if word.degree() == 2 {
            let sites: Vec<usize> = (0..self.n)
                .filter(|&s| word.letter(s) != Letter::I)
                .collect();
            let a = PauliString::single(self.n, sites[0], word.letter(sites[0]))?;
            let b = PauliString::single(self.n, sites[1], word.letter(sites[1]))?;
            let (Some(ia), Some(ib)) = (self.basis.position(&a), self.basis.position(&b)) else {
                return Err(SdpError::InvalidInput(format!(
                    "word {word} is outside the solved basis"
                )));
            };
            return Ok(self.moment_matrix[(ia, ib)]);
        }
        Err(SdpError::InvalidInput(format!(
            "moment of {word} is not recoverable from a level-{} solution",
            self.k
        )))
    }
}

/// Per-edge values extracted from a solution: the edge energy `g`, the
/// centered value `h = g/2 - 1`, and its positive part.
#[derive(Debug, Clone)]
pub struct EdgeValues {
    pub g: Vec<f64>,
    pub h: Vec<f64>,
    pub h_plus: Vec<f64>,
}

/// Per-vertex unit Gram vectors assembled from the moment-matrix factor.
#[derive(Debug, Clone)]
pub struct GramVectors {
    /// One vector of dimension `3 * order` per vertex.
    pub vectors: Vec<Vec<f64>>,
}

impl GramVectors {
    pub fn dot(&self, i: usize, j: usize) -> f64 {
        self.vectors[i]
            .iter()
            .zip(&self.vectors[j])
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Solve the level-`k` moment relaxation of the graph Hamiltonian, using
/// the rotation-invariant variable model for `k <= 2` and the full word
/// model beyond.
pub fn solve_sdp(graph: &WeightedGraph, k: usize, tol: f64) -> Result<SdpSolution, SdpError> {
    let model = if k <= 2 {
        VariableModel::Isotropic
    } else {
        VariableModel::FullWords
    };
    solve_sdp_with_model(graph, k, tol, model)
}

/// Solve with an explicit variable model (the full model cross-checks the
/// isotropic reduction on small instances).
pub fn solve_sdp_with_model(
    graph: &WeightedGraph,
    k: usize,
    tol: f64,
    model: VariableModel,
) -> Result<SdpSolution, SdpError> {
    let n = graph.n();
    let basis = moment_basis(n, k)?;
    if basis.len() > 1500 {
        return Err(SdpError::InstanceTooLarge(format!(
            "moment matrix order {} exceeds the desk-scale cap",
            basis.len()
        )));
    }
    let structure = build_moment_structure(&basis)?;
    let asm = assemble(&basis, &structure, graph, model)?;
    if asm.num_vars > 6000 {
        return Err(SdpError::InstanceTooLarge(format!(
            "{} free moments exceed the dense solver cap",
            asm.num_vars
        )));
    }
    let IpmResult {
        s_matrix,
        linear_objective,
        gap,
        primal_residual,
        iterations,
        status,
        ..
    } = solve_ipm(&asm, tol, MAX_ITER)?;
    if status != SolveStatus::Optimal {
        return Err(SdpError::NoConvergence(format!(
            "status {status:?} after {iterations} iterations (gap {gap:.2e}, primal residual {primal_residual:.2e})"
        )));
    }
    Ok(SdpSolution {
        n,
        k: basis.k(),
        model,
        basis,
        moment_matrix: s_matrix,
        objective: asm.shift + linear_objective,
        gap,
        primal_residual,
        iterations,
        status,
    })
}

/// Def-style per-edge values from a solved relaxation.
pub fn edge_values(sol: &SdpSolution, graph: &WeightedGraph) -> Result<EdgeValues, SdpError> {
    let mut g = Vec::with_capacity(graph.num_edges());
    for &(i, j, _) in graph.edges() {
        let mut letter_sum = 0.0;
        for letter in [Letter::X, Letter::Y, Letter::Z] {
            let word = PauliString::two_site(sol.n, i, letter, j, letter)?;
            letter_sum += sol.moment(&word)?;
        }
        g.push(1.0 - letter_sum);
    }
    let h: Vec<f64> = g.iter().map(|&ge| ge / 2.0 - 1.0).collect();
    let h_plus: Vec<f64> = h.iter().map(|&he| he.max(0.0)).collect();
    Ok(EdgeValues { g, h, h_plus })
}

/// Gram factor of the moment matrix, stacked per vertex:
/// `v_i = (v(x_i); v(y_i); v(z_i)) / sqrt(3)`, unit norm by construction
/// because the moment-matrix diagonal is one.
pub fn gram_vectors(sol: &SdpSolution, clip_tol: f64) -> Result<GramVectors, SdpError> {
    let m = sol.moment_matrix.nrows();
    let eig = sol.moment_matrix.clone().symmetric_eigen();
    let mut factor = DMatrix::zeros(m, m);
    for t in 0..m {
        let lam = eig.eigenvalues[t];
        if lam < -clip_tol {
            return Err(SdpError::Indefinite(lam));
        }
        let root = lam.max(0.0).sqrt();
        for u in 0..m {
            factor[(u, t)] = eig.eigenvectors[(u, t)] * root;
        }
    }
    let mut vectors = Vec::with_capacity(sol.n);
    let inv_sqrt3 = 1.0 / 3.0f64.sqrt();
    for i in 0..sol.n {
        let mut v = Vec::with_capacity(3 * m);
        for letter in [Letter::X, Letter::Y, Letter::Z] {
            let word = PauliString::single(sol.n, i, letter)?;
            let idx = sol.basis.position(&word).ok_or_else(|| {
                SdpError::InvalidInput(format!("single-letter word {word} missing from basis"))
            })?;
            v.extend(factor.row(idx).iter().map(|&x| x * inv_sqrt3));
        }
        vectors.push(v);
    }
    Ok(GramVectors { vectors })
}

/// Relaxation constant `c(G, k)`: the maximum of the edge sum of `h` over
/// level-`k` feasible functionals, computed on the unweighted structure of
/// the graph (the constant is weight-free by definition).
pub fn c_value(graph: &WeightedGraph, k: usize, tol: f64) -> Result<f64, SdpError> {
    let unit = graph.unweighted();
    let sol = solve_sdp(&unit, k, tol)?;
    Ok(sol.objective() / 2.0 - unit.num_edges() as f64)
}

/// Exact counterpart of `c_value` via the largest eigenvalue, valid when
/// the relaxation level reaches the vertex count.
pub fn c_value_exact(graph: &WeightedGraph) -> Result<f64, SdpError> {
    let unit = graph.unweighted();
    let top = lambda_max(&unit)?;
    Ok(top / 2.0 - unit.num_edges() as f64)
}
