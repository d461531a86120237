use crate::error::GraphError;
use crate::graph::WeightedGraph;

/// Exact vertex cover number by branch and bound.
///
/// Branches on a maximum-degree vertex (either it or its whole neighborhood
/// joins the cover), applies the degree-1 reduction greedily, and prunes with
/// a greedy-matching lower bound. Intended for the census scale (n <= 64).
pub fn vertex_cover_number(graph: &WeightedGraph) -> Result<usize, GraphError> {
    let n = graph.n();
    if n > 64 {
        return Err(GraphError::InstanceTooLarge {
            reason: format!("vertex cover solver caps at 64 vertices, got {n}"),
        });
    }
    let mut rows = vec![0u64; n];
    for &(i, j, _) in graph.edges() {
        rows[i] |= 1 << j;
        rows[j] |= 1 << i;
    }
    let mut best = n;
    branch(&rows, 0, &mut best);
    Ok(best)
}

fn branch(rows: &[u64], taken: usize, best: &mut usize) {
    let mut rows = rows.to_vec();
    let mut taken = taken;

    // Degree-1 reduction: a pendant edge is always covered optimally by the
    // non-leaf endpoint.
    loop {
        let mut changed = false;
        for v in 0..rows.len() {
            if rows[v].count_ones() == 1 {
                let u = rows[v].trailing_zeros() as usize;
                remove_vertex(&mut rows, u);
                taken += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let Some(v) = (0..rows.len()).max_by_key(|&v| rows[v].count_ones()) else {
        return;
    };
    if rows[v] == 0 {
        *best = (*best).min(taken);
        return;
    }
    if taken + matching_lower_bound(&rows) >= *best {
        return;
    }

    // Branch 1: v joins the cover.
    {
        let mut r = rows.clone();
        remove_vertex(&mut r, v);
        branch(&r, taken + 1, best);
    }
    // Branch 2: v stays out, so N(v) joins the cover.
    {
        let mut r = rows.clone();
        let neighbors = rows[v];
        let count = neighbors.count_ones() as usize;
        let mut nb = neighbors;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            remove_vertex(&mut r, u);
        }
        branch(&r, taken + count, best);
    }
}

fn remove_vertex(rows: &mut [u64], v: usize) {
    let mask = !(1u64 << v);
    for row in rows.iter_mut() {
        *row &= mask;
    }
    rows[v] = 0;
}

/// Size of a greedy maximal matching: every cover needs one vertex per edge.
fn matching_lower_bound(rows: &[u64]) -> usize {
    let mut used = 0u64;
    let mut count = 0;
    for v in 0..rows.len() {
        if used & (1 << v) != 0 {
            continue;
        }
        let free = rows[v] & !used;
        if free != 0 {
            let u = free.trailing_zeros() as usize;
            used |= (1 << v) | (1 << u);
            count += 1;
        }
    }
    count
}
