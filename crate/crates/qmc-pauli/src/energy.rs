use crate::error::PauliError;
use qmc_graph::{Matching, WeightedGraph};

/// Exact energy of the Bloch product state: `sum_e w_e (1 - u_i . u_j)`.
///
/// The state assigns each vertex the single-qubit density
/// `(I + u_1 X + u_2 Y + u_3 Z)/2`; the trace against each edge term then
/// reduces to the dot product of the Bloch vectors.
pub fn product_state_energy(graph: &WeightedGraph, bloch: &[[f64; 3]]) -> Result<f64, PauliError> {
    if bloch.len() != graph.n() {
        return Err(PauliError::DimensionMismatch {
            dim: bloch.len(),
            n: graph.n(),
        });
    }
    for (i, u) in bloch.iter().enumerate() {
        let err = (u.iter().map(|c| c * c).sum::<f64>().sqrt() - 1.0).abs();
        if err > 1e-9 {
            return Err(PauliError::NotUnitBloch { index: i, error: err });
        }
    }
    Ok(graph
        .edges()
        .iter()
        .map(|&(i, j, w)| {
            let dot: f64 = (0..3).map(|k| bloch[i][k] * bloch[j][k]).sum();
            w * (1.0 - dot)
        })
        .sum())
}

/// Exact energy of the matching state: singlets on matched edges, maximally
/// mixed elsewhere. Matched edges contribute `4 w_e`, all others `w_e`.
pub fn matching_state_energy(graph: &WeightedGraph, m: &Matching) -> Result<f64, PauliError> {
    if m.selected().len() != graph.num_edges() {
        return Err(PauliError::DimensionMismatch {
            dim: m.selected().len(),
            n: graph.num_edges(),
        });
    }
    Ok(graph
        .edges()
        .iter()
        .zip(m.selected())
        .map(|(&(_, _, w), &sel)| if sel { 4.0 * w } else { w })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use qmc_graph::max_weight_matching;

    #[test]
    fn antipodal_and_aligned_bloch_pairs() {
        let k2 = WeightedGraph::unit(2, &[(0, 1)]).unwrap();
        let up = [0.0, 0.0, 1.0];
        let down = [0.0, 0.0, -1.0];
        assert_relative_eq!(product_state_energy(&k2, &[up, down]).unwrap(), 2.0);
        assert_relative_eq!(product_state_energy(&k2, &[up, up]).unwrap(), 0.0);
    }

    #[test]
    fn non_unit_bloch_rejected() {
        let k2 = WeightedGraph::unit(2, &[(0, 1)]).unwrap();
        let bad = [0.0, 0.0, 0.9];
        assert!(matches!(
            product_state_energy(&k2, &[bad, bad]),
            Err(PauliError::NotUnitBloch { .. })
        ));
    }

    #[test]
    fn matching_energies() {
        let k2 = WeightedGraph::unit(2, &[(0, 1)]).unwrap();
        let m = max_weight_matching(&k2);
        assert_relative_eq!(matching_state_energy(&k2, &m).unwrap(), 4.0);

        let p3 = WeightedGraph::path(3);
        let m = max_weight_matching(&p3);
        assert_relative_eq!(matching_state_energy(&p3, &m).unwrap(), 5.0);

        let c5 = WeightedGraph::cycle(5);
        let empty = Matching::empty(&c5);
        assert_relative_eq!(matching_state_energy(&c5, &empty).unwrap(), 5.0);
    }
}
