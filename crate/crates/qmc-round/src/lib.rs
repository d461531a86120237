//! Rounding layer: turns solved moment relaxations into explicit quantum
//! states and exact energies. Implements the general product/matching
//! rounding, the triangle-free entangling rounding with matching-steered
//! phases, and the deterministic bipartite entangling rounding, plus
//! Monte-Carlo ratio statistics against the exact spectrum.

mod alg1;
mod alg2;
mod alg3;
mod error;
mod local;
mod rng;
mod stats;
mod types;

pub use alg1::{algorithm1, product_rounding, Alg1Params};
pub use alg2::{algorithm2, solve_phi_for_right_angle, Alg2Params};
pub use alg3::{algorithm3, Alg3Params};
pub use error::RoundError;
pub use local::{bloch_to_qubit, LocalQubitState};
pub use rng::RngStream;
pub use stats::{empirical_ratio, RatioStats, RoundingAlgorithm};
pub use types::{EdgeDiag, EnergyBreakdown, RoundedOutcome, Winner};
