use crate::solution::EdgeValues;
use qmc_graph::WeightedGraph;

/// Outcome of the per-vertex entanglement budget check
/// `sum_{j in N(i)} h+_{ij} <= 1`.
#[derive(Debug, Clone)]
pub struct MonogamyReport {
    /// Vertices whose incident positive parts exceed the budget, with sums.
    pub violations: Vec<(usize, f64)>,
    pub max_sum: f64,
}

impl MonogamyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies the entanglement budget around every vertex; valid for level 2
/// and above.
pub fn check_monogamy(vals: &EdgeValues, graph: &WeightedGraph, tol: f64) -> MonogamyReport {
    let mut sums = vec![0.0; graph.n()];
    for (k, &(i, j, _)) in graph.edges().iter().enumerate() {
        sums[i] += vals.h_plus[k];
        sums[j] += vals.h_plus[k];
    }
    let max_sum = sums.iter().copied().fold(0.0f64, f64::max);
    let violations = sums
        .into_iter()
        .enumerate()
        .filter(|&(_, s)| s > 1.0 + tol)
        .collect();
    MonogamyReport {
        violations,
        max_sum,
    }
}

/// Outcome of the adjacent-pair refinement
/// `h_{e'} <= (sqrt(3 (1 - h_e^2)) - h_e) / 2` for all adjacent `e, e'`.
#[derive(Debug, Clone)]
pub struct PairBoundReport {
    /// Violating ordered pairs `(e, e', lhs, bound)`.
    pub violations: Vec<(usize, usize, f64, f64)>,
    pub max_excess: f64,
}

impl PairBoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the pairwise bound on every ordered pair of adjacent edges;
/// valid for level 2 and above.
pub fn check_pair_bound(vals: &EdgeValues, graph: &WeightedGraph, tol: f64) -> PairBoundReport {
    let incidence = graph.incidence();
    let mut violations = Vec::new();
    let mut max_excess = 0.0f64;
    for inc in &incidence {
        for (a, &e) in inc.iter().enumerate() {
            for &ep in inc.iter().skip(a + 1) {
                for (first, second) in [(e, ep), (ep, e)] {
                    let he = vals.h[first].clamp(-1.0, 1.0);
                    let bound = 0.5 * ((3.0 * (1.0 - he * he)).max(0.0).sqrt() - he);
                    let lhs = vals.h[second];
                    let excess = lhs - bound;
                    max_excess = max_excess.max(excess);
                    if excess > tol {
                        violations.push((first, second, lhs, bound));
                    }
                }
            }
        }
    }
    PairBoundReport {
        violations,
        max_excess,
    }
}
