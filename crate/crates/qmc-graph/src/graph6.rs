use crate::error::GraphError;
use crate::graph::WeightedGraph;

/// Decode one graph6 record (short form, n <= 62) into a unit-weight graph.
///
/// The encoding is nauty's: a header byte `n + 63`, followed by the bits of
/// the upper-triangular adjacency matrix in column-major order
/// ((0,1), (0,2), (1,2), (0,3), ...), packed six bits per byte, most
/// significant bit first, each byte offset by 63.
pub fn parse_graph6(bytes: &[u8]) -> Result<WeightedGraph, GraphError> {
    let bytes = strip_trailing_newline(bytes);
    if bytes.is_empty() {
        return Err(GraphError::Graph6Header(0));
    }
    let header = bytes[0];
    if header == 126 {
        return Err(GraphError::Graph6LongForm);
    }
    if !(63..=125).contains(&header) {
        return Err(GraphError::Graph6Header(header));
    }
    let n = (header - 63) as usize;
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let payload = &bytes[1..];
    if payload.len() < nbytes {
        return Err(GraphError::Graph6Truncated {
            expected: nbytes,
            found: payload.len(),
        });
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(GraphError::Graph6Byte(byte));
            }
            let group = byte - 63;
            if group & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    WeightedGraph::unit(n, &edges)
}

/// Encode a graph (its unweighted structure) as a short-form graph6 string.
pub fn encode_graph6(graph: &WeightedGraph) -> Result<String, GraphError> {
    let n = graph.n();
    if n > 62 {
        return Err(GraphError::Graph6LongForm);
    }
    let mut adj = vec![false; n * n];
    for &(i, j, _) in graph.edges() {
        adj[i * n + j] = true;
    }
    let nbits = n * (n - 1) / 2;
    let mut out = vec![63 + n as u8];
    let mut group = 0u8;
    let mut filled = 0usize;
    let mut emitted = 0usize;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if adj[i * n + j] {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
                emitted += 6;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(group + 63);
        emitted += 6;
    }
    debug_assert!(emitted >= nbits);
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Parse a stream of newline-separated graph6 records, skipping an optional
/// `>>graph6<<` header.
pub fn parse_graph6_stream(
    data: &[u8],
) -> impl Iterator<Item = Result<WeightedGraph, GraphError>> + '_ {
    data.split(|&b| b == b'\n').filter_map(|line| {
        let line = strip_trailing_newline(line);
        let line = line
            .strip_prefix(b">>graph6<<".as_slice())
            .unwrap_or(line);
        if line.is_empty() {
            None
        } else {
            Some(parse_graph6(line))
        }
    })
}

fn strip_trailing_newline(bytes: &[u8]) -> &[u8] {
    let mut end = bytes.len();
    while end > 0 && (bytes[end - 1] == b'\n' || bytes[end - 1] == b'\r') {
        end -= 1;
    }
    &bytes[..end]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_roundtrip() {
        let g = parse_graph6(b"A_").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1, 1.0)]);
        assert_eq!(encode_graph6(&g).unwrap(), "A_");
    }

    #[test]
    fn empty_two_vertex_graph() {
        let g = parse_graph6(b"A?").unwrap();
        assert_eq!(g.n(), 2);
        assert!(g.edges().is_empty());
    }

    fn edge_set(g: &WeightedGraph) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = g.edges().iter().map(|&(i, j, _)| (i, j)).collect();
        e.sort_unstable();
        e
    }

    #[test]
    fn five_cycle_roundtrip() {
        let c5 = WeightedGraph::cycle(5);
        let enc = encode_graph6(&c5).unwrap();
        let back = parse_graph6(enc.as_bytes()).unwrap();
        assert_eq!(edge_set(&back), edge_set(&c5));
        assert_eq!(back.n(), 5);
    }

    #[test]
    fn known_petgraph_vector() {
        // Independent fixture: 5 vertices, edges 02, 04, 13, 34 encode to "DQc".
        let g = WeightedGraph::unit(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g).unwrap(), "DQc");
        let back = parse_graph6(b"DQc").unwrap();
        assert_eq!(edge_set(&back), edge_set(&g));
    }

    #[test]
    fn stream_with_header() {
        let data = b">>graph6<<A_\nA?\nDQc\n";
        let graphs: Vec<_> = parse_graph6_stream(data).collect::<Result<_, _>>().unwrap();
        assert_eq!(graphs.len(), 3);
        assert_eq!(graphs[0].num_edges(), 1);
        assert_eq!(graphs[1].num_edges(), 0);
        assert_eq!(graphs[2].num_edges(), 4);
    }

    #[test]
    fn truncated_payload_rejected() {
        assert!(matches!(
            parse_graph6(b"D"),
            Err(GraphError::Graph6Truncated { .. })
        ));
    }

    #[test]
    fn long_form_rejected() {
        assert!(matches!(parse_graph6(b"~??"), Err(GraphError::Graph6LongForm)));
    }
}
