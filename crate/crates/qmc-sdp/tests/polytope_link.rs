//! Link between the relaxation and the matching polytope: the scaled
//! positive parts of solved edge values always satisfy the degree and
//! odd-set constraints.

use qmc_graph::{in_matching_polytope, WeightedGraph};
use qmc_sdp::{edge_values, solve_sdp};

#[test]
fn scaled_positive_parts_lie_in_the_matching_polytope() {
    // The census bound up to nine vertices makes (10/11) h+ feasible for
    // the matching polytope of any graph at level 2.
    let mu = 10.0 / 11.0;
    for g in [
        WeightedGraph::cycle(5),
        WeightedGraph::complete(4),
        WeightedGraph::complete(3),
        WeightedGraph::star(4),
        WeightedGraph::path(6),
        WeightedGraph::new(5, vec![(0, 1, 2.0), (1, 2, 1.0), (2, 3, 3.0), (3, 4, 1.0), (0, 4, 2.0)])
            .unwrap(),
    ] {
        let sol = solve_sdp(&g, 2, 1e-7).unwrap();
        let vals = edge_values(&sol, &g).unwrap();
        let scaled: Vec<f64> = vals.h_plus.iter().map(|&h| mu * h).collect();
        assert!(
            in_matching_polytope(&g, &scaled, 1e-8).unwrap(),
            "scaled vector outside polytope on {} vertices: {scaled:?}",
            g.n()
        );
    }
}

#[test]
fn unscaled_positive_parts_can_leave_the_polytope() {
    // On the single edge the optimum has h+ = 1, which alone saturates the
    // degree constraint; the guarantee really does need the prefactor for
    // odd structures. The 5-cycle value sum exceeds the odd-set budget
    // only when scaled above one, so verify the checker notices a
    // synthetic violation.
    let c5 = WeightedGraph::cycle(5);
    let too_big = vec![0.45; 5]; // edge sum 2.25 > (5 - 1) / 2
    assert!(!in_matching_polytope(&c5, &too_big, 1e-8).unwrap());
}
