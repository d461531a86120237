//! Regenerates the bundled small-graph censuses (fixtures/graphs{2..9}.g6):
//! one graph6 record per isomorphism class of simple graphs on n vertices.
//!
//! Generation is by vertex augmentation with canonical-form deduplication;
//! the canonical form is the lexicographically smallest upper-triangle bit
//! string over all vertex relabelings, found by branch-and-prune. Class
//! counts are cross-checked against the known census sizes.

use qmc_graph::{encode_graph6, WeightedGraph};
use std::collections::HashSet;
use std::io::Write;

/// Known numbers of isomorphism classes of simple graphs on n vertices.
const CLASS_COUNTS: [(usize, usize); 8] = [
    (2, 2),
    (3, 4),
    (4, 11),
    (5, 34),
    (6, 156),
    (7, 1044),
    (8, 12346),
    (9, 274668),
];

fn main() {
    let out_dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "crates/qmc-pipeline/fixtures".to_string());
    std::fs::create_dir_all(&out_dir).expect("create fixture directory");

    // Canonical upper-triangle bit strings per order, starting from the
    // single 1-vertex graph.
    let mut current: Vec<u64> = vec![0];
    let mut n = 1usize;
    while n < 9 {
        n += 1;
        let mut seen: HashSet<u64> = HashSet::new();
        for &bits in &current {
            let rows = rows_from_bits(n - 1, bits);
            // Attach vertex n-1 to every subset of the old vertices.
            for mask in 0u16..(1 << (n - 1)) {
                let mut grown = rows.clone();
                grown.push(0);
                for v in 0..(n - 1) {
                    if mask & (1 << v) != 0 {
                        grown[v] |= 1 << (n - 1);
                        grown[n - 1] |= 1 << v;
                    }
                }
                seen.insert(canonical_bits(n, &grown));
            }
        }
        let mut sorted: Vec<u64> = seen.into_iter().collect();
        sorted.sort_unstable();

        let expected = CLASS_COUNTS
            .iter()
            .find(|&&(order, _)| order == n)
            .map(|&(_, count)| count)
            .expect("order in table");
        assert_eq!(
            sorted.len(),
            expected,
            "census size mismatch at n = {n}: got {}, expected {expected}",
            sorted.len()
        );

        let path = format!("{out_dir}/graphs{n}.g6");
        let mut file = std::io::BufWriter::new(std::fs::File::create(&path).expect("create file"));
        for &bits in &sorted {
            let rows = rows_from_bits(n, bits);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rows[i] & (1 << j) != 0 {
                        edges.push((i, j));
                    }
                }
            }
            let graph = WeightedGraph::unit(n, &edges).expect("valid census graph");
            writeln!(file, "{}", encode_graph6(&graph).expect("short form")).expect("write");
        }
        println!("n = {n}: {} classes -> {path}", sorted.len());
        current = sorted;
    }
}

/// Upper-triangle bits in column-major order (the graph6 bit order),
/// most significant bit first.
fn bits_from_rows(n: usize, rows: &[u16]) -> u64 {
    let mut bits = 0u64;
    for j in 1..n {
        for i in 0..j {
            bits <<= 1;
            if rows[i] & (1 << j) != 0 {
                bits |= 1;
            }
        }
    }
    bits
}

fn rows_from_bits(n: usize, bits: u64) -> Vec<u16> {
    let total = n * (n - 1) / 2;
    let mut rows = vec![0u16; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits & (1 << (total - 1 - k)) != 0 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    rows
}

/// Lexicographically smallest upper-triangle bit string over all vertex
/// relabelings: depth-first placement with prefix pruning.
fn canonical_bits(n: usize, rows: &[u16]) -> u64 {
    let total = n * (n - 1) / 2;
    let mut best = u64::MAX;
    let mut perm = vec![usize::MAX; n];
    let mut used = 0u16;
    search(n, rows, 0, &mut perm, &mut used, 0, 0, total, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: usize,
    rows: &[u16],
    pos: usize,
    perm: &mut Vec<usize>,
    used: &mut u16,
    prefix: u64,
    prefix_len: usize,
    total: usize,
    best: &mut u64,
) {
    if pos == n {
        if prefix < *best {
            *best = prefix;
        }
        return;
    }
    for v in 0..n {
        if *used & (1 << v) != 0 {
            continue;
        }
        // Column bits of candidate v against the already placed vertices.
        let mut col = 0u64;
        for placed in perm.iter().take(pos) {
            col <<= 1;
            if rows[*placed] & (1 << v) != 0 {
                col |= 1;
            }
        }
        let new_prefix = (prefix << pos) | col;
        let new_len = prefix_len + pos;
        if *best != u64::MAX && new_len > 0 {
            let best_prefix = *best >> (total - new_len);
            if new_prefix > best_prefix {
                continue; // every completion is larger
            }
        }
        perm[pos] = v;
        *used |= 1 << v;
        search(n, rows, pos + 1, perm, used, new_prefix, new_len, total, best);
        *used &= !(1 << v);
        perm[pos] = usize::MAX;
    }
}

#[allow(dead_code)]
fn round_trip_check(n: usize, rows: &[u16]) {
    assert_eq!(rows_from_bits(n, bits_from_rows(n, rows)), rows);
}
