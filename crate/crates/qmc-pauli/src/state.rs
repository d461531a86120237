use crate::error::PauliError;
use crate::hamiltonian::HamiltonianTerms;
use crate::pauli::PauliString;
use num_complex::Complex64;

const NORM_TOL: f64 = 1e-10;

/// Complex amplitude vector over the computational basis of `n` qubits.
///
/// Site `i` corresponds to bit `i` of the basis index (qubit 0 is the least
/// significant bit). Public constructors and operators keep the Euclidean
/// norm at 1 within 1e-10.
#[derive(Debug, Clone)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state |index⟩.
    pub fn basis(n: usize, index: usize) -> Result<Self, PauliError> {
        if n > 24 {
            return Err(PauliError::InstanceTooLarge(format!(
                "statevector of {n} qubits"
            )));
        }
        let dim = 1usize << n;
        if index >= dim {
            return Err(PauliError::InvalidInput(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Build from raw amplitudes, normalizing and rejecting the zero vector.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self, PauliError> {
        if amps.len() != 1usize << n {
            return Err(PauliError::DimensionMismatch {
                dim: amps.len(),
                n,
            });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(PauliError::NotNormalized(1.0));
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(StateVector { n, amps })
    }

    /// Product state from per-site single-qubit states.
    pub fn product(locals: &[[Complex64; 2]]) -> Result<Self, PauliError> {
        let n = locals.len();
        if n > 24 {
            return Err(PauliError::InstanceTooLarge(format!(
                "statevector of {n} qubits"
            )));
        }
        let dim = 1usize << n;
        let mut amps = vec![Complex64::new(1.0, 0.0); dim];
        for b in 0..dim {
            let mut a = Complex64::new(1.0, 0.0);
            for (site, local) in locals.iter().enumerate() {
                a *= local[(b >> site) & 1];
            }
            amps[b] = a;
        }
        Self::from_amplitudes(n, amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn check_normalized(&self) -> Result<(), PauliError> {
        let err = (self.norm() - 1.0).abs();
        if err > NORM_TOL.max(1e-9) {
            return Err(PauliError::NotNormalized(err));
        }
        Ok(())
    }
}

/// Apply a Pauli word by bit manipulation: `P|b⟩ = i^{#Y} (-1)^{|b & z|} |b ^ x⟩`.
pub fn apply_pauli(p: &PauliString, state: &StateVector) -> Result<StateVector, PauliError> {
    if p.n() != state.n {
        return Err(PauliError::DimensionMismatch {
            dim: state.amps.len(),
            n: p.n(),
        });
    }
    let phase = Complex64::i().powu(p.y_count());
    let x = p.x_mask() as usize;
    let z = p.z_mask();
    let mut out = vec![Complex64::new(0.0, 0.0); state.amps.len()];
    for (b, &a) in state.amps.iter().enumerate() {
        let sign = if (b as u64 & z).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        out[b ^ x] = phase * sign * a;
    }
    Ok(StateVector {
        n: state.n,
        amps: out,
    })
}

/// Apply an arbitrary single-qubit operator to one site.
pub fn apply_single_qubit(
    state: &StateVector,
    site: usize,
    m: &[[Complex64; 2]; 2],
) -> Result<StateVector, PauliError> {
    if site >= state.n {
        return Err(PauliError::SiteOutOfRange {
            site,
            n: state.n,
        });
    }
    let bit = 1usize << site;
    let mut out = state.amps.clone();
    for b in 0..state.amps.len() {
        if b & bit == 0 {
            let a0 = state.amps[b];
            let a1 = state.amps[b | bit];
            out[b] = m[0][0] * a0 + m[0][1] * a1;
            out[b | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
    Ok(StateVector {
        n: state.n,
        amps: out,
    })
}

/// `exp(i * angle/2 * P) |ψ⟩ = cos(angle/2) |ψ⟩ + i sin(angle/2) P|ψ⟩`.
///
/// Valid because every plain Pauli word squares to the identity. Intended
/// for rotation generators supported on at most two sites.
pub fn apply_two_pauli_rotation(
    state: &StateVector,
    p: &PauliString,
    angle: f64,
) -> Result<StateVector, PauliError> {
    debug_assert!(p.degree() <= 2, "rotation generator acts on <= 2 sites");
    let rotated = apply_pauli(p, state)?;
    let c = (angle / 2.0).cos();
    let s = Complex64::i() * (angle / 2.0).sin();
    let amps = state
        .amps
        .iter()
        .zip(&rotated.amps)
        .map(|(&a, &b)| c * a + s * b)
        .collect();
    Ok(StateVector {
        n: state.n,
        amps,
    })
}

/// Real expectation value `⟨ψ|H|ψ⟩` of a term list on a normalized state.
pub fn expectation(state: &StateVector, h: &HamiltonianTerms) -> Result<f64, PauliError> {
    if h.n() != state.n {
        return Err(PauliError::DimensionMismatch {
            dim: state.amps.len(),
            n: h.n(),
        });
    }
    state.check_normalized()?;
    let mut total = Complex64::new(0.0, 0.0);
    for (coeff, word) in h.terms() {
        let phase = Complex64::i().powu(word.y_count());
        let x = word.x_mask() as usize;
        let z = word.z_mask();
        let mut val = Complex64::new(0.0, 0.0);
        for (b, &a) in state.amps.iter().enumerate() {
            let sign = if (b as u64 & z).count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            val += state.amps[b ^ x].conj() * phase * sign * a;
        }
        total += *coeff * val;
    }
    debug_assert!(
        total.im.abs() < 1e-9,
        "expectation of a Hermitian term list must be real, got imag {}",
        total.im
    );
    Ok(total.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Letter;
    use approx::assert_relative_eq;

    #[test]
    fn single_qubit_pauli_actions() {
        let zero = StateVector::basis(1, 0).unwrap();
        let one = StateVector::basis(1, 1).unwrap();

        let x = PauliString::from_letters(&[Letter::X]).unwrap();
        let out = apply_pauli(&x, &zero).unwrap();
        assert_relative_eq!(out.amplitudes()[1].re, 1.0, epsilon = 1e-15);

        let z = PauliString::from_letters(&[Letter::Z]).unwrap();
        let out = apply_pauli(&z, &one).unwrap();
        assert_relative_eq!(out.amplitudes()[1].re, -1.0, epsilon = 1e-15);

        let y = PauliString::from_letters(&[Letter::Y]).unwrap();
        let out = apply_pauli(&y, &zero).unwrap();
        assert_relative_eq!(out.amplitudes()[1].im, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn rotation_limits() {
        let psi = StateVector::from_amplitudes(
            2,
            vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let p = PauliString::two_site(2, 0, Letter::Y, 1, Letter::X).unwrap();

        let same = apply_two_pauli_rotation(&psi, &p, 0.0).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(same.amplitudes()) {
            assert_relative_eq!(a.re, b.re, epsilon = 1e-15);
            assert_relative_eq!(a.im, b.im, epsilon = 1e-15);
        }

        // angle 2π flips the global sign and preserves the norm.
        let flipped = apply_two_pauli_rotation(&psi, &p, 2.0 * std::f64::consts::PI).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(flipped.amplitudes()) {
            assert_relative_eq!(a.re, -b.re, epsilon = 1e-12);
            assert_relative_eq!(a.im, -b.im, epsilon = 1e-12);
        }
        assert_relative_eq!(flipped.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn norm_preserved_by_pauli_apply() {
        let psi = StateVector::from_amplitudes(
            2,
            vec![
                Complex64::new(0.3, 0.1),
                Complex64::new(-0.2, 0.4),
                Complex64::new(0.5, -0.3),
                Complex64::new(0.1, 0.6),
            ],
        )
        .unwrap();
        let p = PauliString::two_site(2, 0, Letter::Y, 1, Letter::Z).unwrap();
        let out = apply_pauli(&p, &psi).unwrap();
        assert_relative_eq!(out.norm(), 1.0, epsilon = 1e-12);
    }
}
