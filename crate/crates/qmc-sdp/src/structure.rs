use crate::basis::MomentBasis;
use crate::error::SdpError;
use qmc_pauli::{pauli_product, PauliString};
use std::collections::HashMap;

/// Content of one moment-matrix cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellEntry {
    /// The product carries an imaginary phase, so the real functional
    /// vanishes on it.
    Zero,
    /// `u * v = sign * variables[word]` with `sign` +1 or -1.
    Term { sign: i8, var: usize },
}

/// Symbolic structure of the moment matrix: each cell `(u, v)` maps to a
/// signed variable (a reduced word of degree at most `2k` reached as a
/// real-phase product of two basis words) or to a fixed zero. The diagonal
/// maps to the identity variable with sign +1.
#[derive(Debug, Clone)]
pub struct MomentStructure {
    m: usize,
    /// Upper-triangle cells in row-major order: index `u * m + v - u*(u+1)/2`.
    cells: Vec<CellEntry>,
    variables: Vec<PauliString>,
}

impl MomentStructure {
    pub fn order(&self) -> usize {
        self.m
    }

    /// Distinct reachable real-phase words; index 0 is the identity.
    pub fn variables(&self) -> &[PauliString] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Cell for unordered `(u, v)`.
    pub fn cell(&self, u: usize, v: usize) -> CellEntry {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        self.cells[upper_index(self.m, u, v)]
    }

    /// Iterate upper-triangle cells as `(u, v, entry)`.
    pub fn upper_cells(&self) -> impl Iterator<Item = (usize, usize, CellEntry)> + '_ {
        (0..self.m).flat_map(move |u| {
            (u..self.m).map(move |v| (u, v, self.cells[upper_index(self.m, u, v)]))
        })
    }
}

fn upper_index(m: usize, u: usize, v: usize) -> usize {
    // Row u starts after sum_{r < u} (m - r) stored entries.
    u * (2 * m + 1 - u) / 2 + (v - u)
}

/// Computes every product `u * v` of basis words. Real-phase products map
/// to a signed variable (the reduced word); imaginary phases fix the cell
/// to zero in the real formulation.
pub fn build_moment_structure(basis: &MomentBasis) -> Result<MomentStructure, SdpError> {
    let m = basis.len();
    let mut variables: Vec<PauliString> = Vec::new();
    let mut var_index: HashMap<PauliString, usize> = HashMap::new();
    let mut cells = Vec::with_capacity(m * (m + 1) / 2);
    for u in 0..m {
        for v in u..m {
            let p = pauli_product(basis.word(u), basis.word(v))?;
            let entry = match p.real_sign() {
                None => CellEntry::Zero,
                Some(sign) => {
                    let var = *var_index.entry(p.word).or_insert_with(|| {
                        variables.push(p.word);
                        variables.len() - 1
                    });
                    CellEntry::Term {
                        sign: sign as i8,
                        var,
                    }
                }
            };
            cells.push(entry);
        }
    }
    debug_assert!(variables[0].is_identity());
    Ok(MomentStructure {
        m,
        cells,
        variables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::moment_basis;
    use qmc_pauli::{Letter, PauliString};

    #[test]
    fn diagonal_is_identity_with_plus_sign() {
        let basis = moment_basis(3, 2).unwrap();
        let s = build_moment_structure(&basis).unwrap();
        for u in 0..s.order() {
            match s.cell(u, u) {
                CellEntry::Term { sign, var } => {
                    assert_eq!(sign, 1);
                    assert_eq!(var, 0);
                }
                CellEntry::Zero => panic!("diagonal cell is zero"),
            }
        }
        assert!(s.variables()[0].is_identity());
    }

    #[test]
    fn same_site_mixed_letters_vanish() {
        let basis = moment_basis(2, 1).unwrap();
        let s = build_moment_structure(&basis).unwrap();
        let x1 = basis
            .position(&PauliString::single(2, 0, Letter::X).unwrap())
            .unwrap();
        let y1 = basis
            .position(&PauliString::single(2, 0, Letter::Y).unwrap())
            .unwrap();
        // x_0 y_0 = i z_0: imaginary phase.
        assert_eq!(s.cell(x1, y1), CellEntry::Zero);
    }

    #[test]
    fn distinct_sites_commute_with_plus_sign() {
        let basis = moment_basis(2, 1).unwrap();
        let s = build_moment_structure(&basis).unwrap();
        let x1 = basis
            .position(&PauliString::single(2, 0, Letter::X).unwrap())
            .unwrap();
        let x2 = basis
            .position(&PauliString::single(2, 1, Letter::X).unwrap())
            .unwrap();
        match s.cell(x1, x2) {
            CellEntry::Term { sign, var } => {
                assert_eq!(sign, 1);
                let expected =
                    PauliString::two_site(2, 0, Letter::X, 1, Letter::X).unwrap();
                assert_eq!(s.variables()[var], expected);
            }
            CellEntry::Zero => panic!("cross-site product must be real"),
        }
    }

    #[test]
    fn cross_products_can_carry_minus_signs() {
        // (x_0 y_1) * (y_0 x_1) = (x_0 y_0)(y_1 x_1) = (i z_0)(-i z_1) = z_0 z_1.
        // (x_0 y_1) * (x_1 y_0) ... exercised via the full structure: at least
        // one off-diagonal cell must carry sign -1 at level 2.
        let basis = moment_basis(2, 2).unwrap();
        let s = build_moment_structure(&basis).unwrap();
        let negatives = s
            .upper_cells()
            .filter(|(_, _, e)| matches!(e, CellEntry::Term { sign: -1, .. }))
            .count();
        assert!(negatives > 0);
    }

    #[test]
    fn symmetry_of_assignment() {
        let basis = moment_basis(3, 2).unwrap();
        let s = build_moment_structure(&basis).unwrap();
        // cell(u, v) == cell(v, u) by construction of the accessor.
        assert_eq!(s.cell(2, 5), s.cell(5, 2));
    }
}
