use crate::error::PauliError;
use crate::pauli::{Letter, PauliString};
use nalgebra::DMatrix;
use qmc_graph::WeightedGraph;

/// Weighted sum of Pauli words: `H = sum_t c_t P_t` with real coefficients.
#[derive(Debug, Clone)]
pub struct HamiltonianTerms {
    n: usize,
    terms: Vec<(f64, PauliString)>,
}

impl HamiltonianTerms {
    pub fn new(n: usize, terms: Vec<(f64, PauliString)>) -> Result<Self, PauliError> {
        if n > 64 {
            return Err(PauliError::TooManySites(n));
        }
        for (c, w) in &terms {
            if w.n() != n {
                return Err(PauliError::SiteMismatch(w.n(), n));
            }
            if !c.is_finite() {
                return Err(PauliError::InvalidInput(format!(
                    "non-finite coefficient {c}"
                )));
            }
        }
        Ok(HamiltonianTerms { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    /// Upper bound on the operator norm: the coefficient 1-norm.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.abs()).sum()
    }

    /// Matrix-vector product over real vectors.
    ///
    /// Valid whenever every term has an even number of Y letters, which makes
    /// the term matrices real; graph Hamiltonians always satisfy this.
    pub fn matvec_real(&self, v: &[f64], out: &mut [f64]) {
        debug_assert_eq!(v.len(), 1 << self.n);
        debug_assert_eq!(out.len(), v.len());
        out.fill(0.0);
        for (coeff, word) in &self.terms {
            let ny = word.y_count();
            debug_assert!(ny % 2 == 0, "real matvec requires an even Y count");
            // i^{2k} = (-1)^k
            let base = if ny % 4 == 0 { *coeff } else { -coeff };
            let x = word.x_mask() as usize;
            let z = word.z_mask();
            if x == 0 {
                for (b, &a) in v.iter().enumerate() {
                    let sign = if (b as u64 & z).count_ones() % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    out[b] += base * sign * a;
                }
            } else {
                for (b, &a) in v.iter().enumerate() {
                    let sign = if (b as u64 & z).count_ones() % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    out[b ^ x] += base * sign * a;
                }
            }
        }
    }

    /// Dense real symmetric matrix of the term list (even Y counts only).
    pub fn dense_real(&self) -> Result<DMatrix<f64>, PauliError> {
        if self.n > 13 {
            return Err(PauliError::InstanceTooLarge(format!(
                "dense matrix for {} sites",
                self.n
            )));
        }
        if self.terms.iter().any(|(_, w)| w.y_count() % 2 != 0) {
            return Err(PauliError::InvalidInput(
                "dense real form requires every term to carry an even number of Y letters".into(),
            ));
        }
        let dim = 1usize << self.n;
        let mut m = DMatrix::zeros(dim, dim);
        for (coeff, word) in &self.terms {
            let base = if word.y_count() % 4 == 0 {
                *coeff
            } else {
                -coeff
            };
            let x = word.x_mask() as usize;
            let z = word.z_mask();
            for b in 0..dim {
                let sign = if (b as u64 & z).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                m[(b ^ x, b)] += base * sign;
            }
        }
        Ok(m)
    }
}

/// Terms of the graph Hamiltonian: one identity term carrying the total
/// weight, and `-w_e` on each of X_iX_j, Y_iY_j, Z_iZ_j per edge.
pub fn hamiltonian_terms(graph: &WeightedGraph) -> Result<HamiltonianTerms, PauliError> {
    let n = graph.n();
    if n > 64 {
        return Err(PauliError::TooManySites(n));
    }
    let mut terms = Vec::with_capacity(1 + 3 * graph.num_edges());
    if !graph.edges().is_empty() {
        terms.push((graph.total_weight(), PauliString::identity(n)?));
    }
    for &(i, j, w) in graph.edges() {
        for letter in [Letter::X, Letter::Y, Letter::Z] {
            terms.push((-w, PauliString::two_site(n, i, letter, j, letter)?));
        }
    }
    HamiltonianTerms::new(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn k2_terms() {
        let g = WeightedGraph::unit(2, &[(0, 1)]).unwrap();
        let h = hamiltonian_terms(&g).unwrap();
        assert_eq!(h.terms().len(), 4);
        assert_relative_eq!(h.terms()[0].0, 1.0);
        assert!(h.terms()[0].1.is_identity());
        for (c, w) in &h.terms()[1..] {
            assert_relative_eq!(*c, -1.0);
            assert_eq!(w.degree(), 2);
        }
    }

    #[test]
    fn empty_graph_is_zero_operator() {
        let g = WeightedGraph::unit(3, &[]).unwrap();
        let h = hamiltonian_terms(&g).unwrap();
        assert!(h.terms().is_empty());
    }

    #[test]
    fn k3_term_count() {
        let g = WeightedGraph::complete(3);
        let h = hamiltonian_terms(&g).unwrap();
        assert_eq!(h.terms().len(), 1 + 9);
        assert_relative_eq!(h.terms()[0].0, 3.0);
    }

    #[test]
    fn matvec_matches_dense() {
        let g = WeightedGraph::new(3, vec![(0, 1, 1.5), (1, 2, 0.7), (0, 2, 2.0)]).unwrap();
        let h = hamiltonian_terms(&g).unwrap();
        let dense = h.dense_real().unwrap();
        let v: Vec<f64> = (0..8).map(|i| ((i * 37 + 11) % 17) as f64 / 17.0 - 0.5).collect();
        let mut out = vec![0.0; 8];
        h.matvec_real(&v, &mut out);
        let dv = &dense * nalgebra::DVector::from_column_slice(&v);
        for b in 0..8 {
            assert_relative_eq!(out[b], dv[b], epsilon = 1e-12);
        }
        // Symmetry of the dense form.
        assert_relative_eq!((&dense - dense.transpose()).norm(), 0.0, epsilon = 1e-12);
    }
}
