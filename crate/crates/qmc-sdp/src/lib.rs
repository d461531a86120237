//! Moment relaxation of the quantum Max-Cut problem over reduced Pauli
//! words: basis and moment-matrix structure construction, a dense
//! primal-dual interior-point solver (with a rotation-invariant variable
//! reduction for levels 1 and 2), extraction of per-edge values and Gram
//! vectors, the relaxation constant `c(G, k)`, and the entanglement
//! feasibility checks used by the verification pipeline.

mod basis;
mod checks;
mod error;
mod ipm;
mod problem;
mod solution;
mod structure;

pub use basis::{moment_basis, MomentBasis};
pub use checks::{check_monogamy, check_pair_bound, MonogamyReport, PairBoundReport};
pub use error::SdpError;
pub use ipm::SolveStatus;
pub use problem::VariableModel;
pub use solution::{DEFAULT_TOL, 
    c_value, c_value_exact, edge_values, gram_vectors, solve_sdp, solve_sdp_with_model,
    EdgeValues, GramVectors, SdpSolution,
};
pub use structure::{build_moment_structure, CellEntry, MomentStructure};
