//! Graph layer of the quantum Max-Cut toolkit.
//!
//! Provides the weighted graph representation shared by all other crates,
//! graph6 ingestion of nauty-style graph streams, the structural predicates
//! used by the census filter (triangle-freeness, bipartiteness,
//! biconnectivity, stable-set neighborhood expansion), exact maximum weight
//! matching on general graphs, an exact vertex cover solver, and a
//! desk-scale matching-polytope membership checker.

mod cover;
mod error;
mod graph;
mod graph6;
mod matching;
mod polytope;
mod predicates;

pub use cover::vertex_cover_number;
pub use error::GraphError;
pub use graph::{Bipartition, Matching, WeightedGraph};
pub use graph6::{encode_graph6, parse_graph6, parse_graph6_stream};
pub use matching::{brute_force_matching, max_weight_matching, max_weight_matching_on_edges};
pub use polytope::in_matching_polytope;
pub use predicates::{
    bipartition, is_biconnected, is_triangle_free, lemma7_filter, stable_set_property_ok,
    FilterOutcome, FilterReason,
};
