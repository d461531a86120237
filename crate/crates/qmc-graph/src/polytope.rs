use crate::error::GraphError;
use crate::graph::WeightedGraph;

/// Matching-polytope membership by explicit odd-set enumeration.
///
/// Checks `x >= 0`, the degree constraints `sum_{j in N(i)} x_ij <= 1`, and
/// the odd set inequalities `sum_{e in E_S} x_e <= (|S| - 1) / 2` for every
/// odd subset `S`. Enumeration is exponential, so instances are capped at
/// 15 vertices. The tolerance absorbs solver inexactness in `x`.
pub fn in_matching_polytope(
    graph: &WeightedGraph,
    x: &[f64],
    tol: f64,
) -> Result<bool, GraphError> {
    let n = graph.n();
    if n > 15 {
        return Err(GraphError::InstanceTooLarge {
            reason: format!("odd-set enumeration caps at 15 vertices, got {n}"),
        });
    }
    if x.len() != graph.num_edges() {
        return Err(GraphError::DimensionMismatch {
            expected: graph.num_edges(),
            got: x.len(),
        });
    }
    if x.iter().any(|&v| v < -tol) {
        return Ok(false);
    }
    let mut degree_sum = vec![0.0; n];
    for (k, &(i, j, _)) in graph.edges().iter().enumerate() {
        degree_sum[i] += x[k];
        degree_sum[j] += x[k];
    }
    if degree_sum.iter().any(|&s| s > 1.0 + tol) {
        return Ok(false);
    }
    // Odd sets of size >= 3; sizes 1 are vacuous.
    let edges = graph.edges();
    for subset in 1u32..(1 << n) {
        let size = subset.count_ones();
        if size % 2 == 0 || size < 3 {
            continue;
        }
        let mut inner = 0.0;
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            if subset & (1 << i) != 0 && subset & (1 << j) != 0 {
                inner += x[k];
            }
        }
        if inner > (size as f64 - 1.0) / 2.0 + tol {
            return Ok(false);
        }
    }
    Ok(true)
}
