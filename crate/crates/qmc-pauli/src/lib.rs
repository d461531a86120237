//! Pauli operator layer: word algebra with exact quarter-phase bookkeeping,
//! Heisenberg-type graph Hamiltonians, matrix-free statevector kernels, and
//! exact largest-eigenvalue computation (dense for small systems, Lanczos
//! with full reorthogonalization up to 14 sites).

mod eigen;
mod energy;
mod error;
mod hamiltonian;
mod pauli;
mod state;

pub use eigen::{lambda_max, lambda_max_upper_from_delta, lambda_max_via, EigMethod};
pub use energy::{matching_state_energy, product_state_energy};
pub use error::PauliError;
pub use hamiltonian::{hamiltonian_terms, HamiltonianTerms};
pub use pauli::{pauli_product, Letter, PauliString, PhasedPauli};
pub use state::{apply_pauli, apply_single_qubit, apply_two_pauli_rotation, expectation, StateVector};
