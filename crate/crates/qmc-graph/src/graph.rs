use crate::error::GraphError;
use serde::{Deserialize, Serialize};

/// Simple undirected graph with positive edge weights.
///
/// Edges are stored as `(i, j, w)` with `i < j < n` and `w > 0`. The edge
/// order is preserved from construction; all per-edge quantities elsewhere in
/// the toolkit (SDP edge values, rounding angles, matching indicators) are
/// indexed by position in [`WeightedGraph::edges`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

/// Wire format: `{"n": 5, "edges": [[0, 1, 1.0], ...]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl TryFrom<GraphJson> for WeightedGraph {
    type Error = GraphError;
    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        WeightedGraph::new(j.n, j.edges)
    }
}

impl From<WeightedGraph> for GraphJson {
    fn from(g: WeightedGraph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl WeightedGraph {
    /// Build a graph, validating endpoints, positivity of weights and
    /// absence of duplicates.
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut seen = std::collections::HashSet::new();
        for &(i, j, w) in &edges {
            if i >= j || j >= n {
                return Err(GraphError::InvalidEdge(i, j));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(GraphError::InvalidWeight(i, j, w));
            }
            if !seen.insert((i, j)) {
                return Err(GraphError::DuplicateEdge(i, j));
            }
        }
        Ok(WeightedGraph { n, edges })
    }

    /// Unit-weight graph from an edge list.
    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new(n, edges.iter().map(|&(i, j)| (i, j, 1.0)).collect())
    }

    /// Cycle graph C_n with unit weights.
    pub fn cycle(n: usize) -> Self {
        let edges = (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                (i.min(j), i.max(j))
            })
            .collect::<Vec<_>>();
        Self::unit(n, &edges).expect("cycle edges are valid")
    }

    /// Complete graph K_n with unit weights.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Self::unit(n, &edges).expect("complete graph edges are valid")
    }

    /// Path graph P_n with unit weights.
    pub fn path(n: usize) -> Self {
        let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        Self::unit(n, &edges).expect("path edges are valid")
    }

    /// Star K_{1,m} on m+1 vertices (center 0) with unit weights.
    pub fn star(m: usize) -> Self {
        let edges = (1..=m).map(|i| (0, i)).collect::<Vec<_>>();
        Self::unit(m + 1, &edges).expect("star edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Neighbor lists indexed by vertex.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j, _) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// Adjacency rows as chunked bitsets (64 vertices per word).
    pub fn adjacency_bits(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; self.n];
        for &(i, j, _) in &self.edges {
            rows[i][j / 64] |= 1 << (j % 64);
            rows[j][i / 64] |= 1 << (i % 64);
        }
        rows
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j, _)| i == v || j == v)
            .count()
    }

    /// Edge-list positions incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (k, &(i, j, _)) in self.edges.iter().enumerate() {
            inc[i].push(k);
            inc[j].push(k);
        }
        inc
    }

    /// Same graph with every weight replaced by 1.
    pub fn unweighted(&self) -> WeightedGraph {
        WeightedGraph {
            n: self.n,
            edges: self.edges.iter().map(|&(i, j, _)| (i, j, 1.0)).collect(),
        }
    }
}

/// Per-edge indicator of a matching; indices follow [`WeightedGraph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    selected: Vec<bool>,
}

impl Matching {
    /// Validates that no two selected edges share a vertex.
    pub fn new(graph: &WeightedGraph, selected: Vec<bool>) -> Result<Self, GraphError> {
        if selected.len() != graph.num_edges() {
            return Err(GraphError::DimensionMismatch {
                expected: graph.num_edges(),
                got: selected.len(),
            });
        }
        let mut used = vec![false; graph.n()];
        for (k, &(i, j, _)) in graph.edges().iter().enumerate() {
            if selected[k] {
                if used[i] || used[j] {
                    return Err(GraphError::InvalidInput(format!(
                        "matching selects adjacent edges at ({i}, {j})"
                    )));
                }
                used[i] = true;
                used[j] = true;
            }
        }
        Ok(Matching { selected })
    }

    pub fn empty(graph: &WeightedGraph) -> Self {
        Matching {
            selected: vec![false; graph.num_edges()],
        }
    }

    pub fn selected(&self) -> &[bool] {
        &self.selected
    }

    pub fn contains(&self, edge_index: usize) -> bool {
        self.selected[edge_index]
    }

    pub fn cardinality(&self) -> usize {
        self.selected.iter().filter(|&&s| s).count()
    }

    /// Total weight of the selected edges.
    pub fn weight(&self, graph: &WeightedGraph) -> f64 {
        graph
            .edges()
            .iter()
            .zip(&self.selected)
            .filter(|(_, &s)| s)
            .map(|(&(_, _, w), _)| w)
            .sum()
    }

    /// Characteristic vector, usable with the matching-polytope checker.
    pub fn characteristic_vector(&self) -> Vec<f64> {
        self.selected
            .iter()
            .map(|&s| if s { 1.0 } else { 0.0 })
            .collect()
    }

    /// `mate[v] = Some(u)` if `{v, u}` is matched.
    pub fn mates(&self, graph: &WeightedGraph) -> Vec<Option<usize>> {
        let mut mate = vec![None; graph.n()];
        for (k, &(i, j, _)) in graph.edges().iter().enumerate() {
            if self.selected[k] {
                mate[i] = Some(j);
                mate[j] = Some(i);
            }
        }
        mate
    }
}

/// Two-coloring of the vertices; every edge joins side 0 to side 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<u8>,
}

impl Bipartition {
    pub fn new(graph: &WeightedGraph, side: Vec<u8>) -> Result<Self, GraphError> {
        if side.len() != graph.n() {
            return Err(GraphError::DimensionMismatch {
                expected: graph.n(),
                got: side.len(),
            });
        }
        if side.iter().any(|&s| s > 1) {
            return Err(GraphError::InvalidInput("sides must be 0 or 1".into()));
        }
        for &(i, j, _) in graph.edges() {
            if side[i] == side[j] {
                return Err(GraphError::InvalidInput(format!(
                    "edge ({i}, {j}) joins two vertices on side {}",
                    side[i]
                )));
            }
        }
        Ok(Bipartition { side })
    }

    pub fn side(&self, v: usize) -> u8 {
        self.side[v]
    }

    pub fn sides(&self) -> &[u8] {
        &self.side
    }
}
