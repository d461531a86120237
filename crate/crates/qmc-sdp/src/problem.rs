use crate::basis::MomentBasis;
use crate::error::SdpError;
use crate::structure::{CellEntry, MomentStructure};
use qmc_graph::WeightedGraph;
use qmc_pauli::{Letter, PauliString};
use std::collections::HashMap;

/// How the free moments are parameterized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariableModel {
    /// One optimization variable per reachable reduced word. Fully general.
    FullWords,
    /// Variables are the rotation-invariant moments. The feasible set is
    /// invariant under simultaneous orthogonal rotation of the letter
    /// triple at every site and the objective only involves invariant
    /// moments, so averaging any optimum over the rotation group yields an
    /// invariant optimum; restricting to invariant functionals therefore
    /// preserves the optimal value while shrinking the variable count by
    /// an order of magnitude. Supported for levels 1 and 2.
    Isotropic,
}

/// Invariant moment classes on sorted site tuples: the pair moment, the
/// antisymmetric triple moment, and the three pairing moments on quadruples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum InvKey {
    Pair(u8, u8),
    Triple(u8, u8, u8),
    Quad(u8, [u8; 4]),
}

/// One signed cell of a constraint matrix (upper triangle).
#[derive(Debug, Clone, Copy)]
pub(crate) struct SuppCell {
    pub row: u32,
    pub col: u32,
    pub coeff: f64,
}

/// Assembled optimization problem:
/// maximize `shift + c . y` subject to `M(y) = I + sum_v y_v A_v` PSD.
pub(crate) struct Assembled {
    pub m: usize,
    pub num_vars: usize,
    /// Upper-triangle support of each A_v.
    pub supports: Vec<Vec<SuppCell>>,
    pub c: Vec<f64>,
    pub shift: f64,
    /// Parity block of each basis row; rows in different blocks never share
    /// a nonzero cell under the isotropic model.
    pub block_of: Vec<u8>,
}

pub(crate) fn assemble(
    basis: &MomentBasis,
    structure: &MomentStructure,
    graph: &WeightedGraph,
    model: VariableModel,
) -> Result<Assembled, SdpError> {
    if model == VariableModel::Isotropic && basis.k() > 2 {
        return Err(SdpError::InvalidInput(
            "the isotropic variable model covers levels 1 and 2 only".into(),
        ));
    }
    let m = structure.order();

    // Variable interning.
    let mut supports: Vec<Vec<SuppCell>> = Vec::new();
    let mut word_decomp: HashMap<PauliString, Vec<(usize, f64)>> = HashMap::new();
    let mut full_index: HashMap<PauliString, usize> = HashMap::new();
    let mut inv_index: HashMap<InvKey, usize> = HashMap::new();

    let mut decomp_of = |word: &PauliString,
                         supports: &mut Vec<Vec<SuppCell>>|
     -> Vec<(usize, f64)> {
        if let Some(d) = word_decomp.get(word) {
            return d.clone();
        }
        let d: Vec<(usize, f64)> = match model {
            VariableModel::FullWords => {
                let next = full_index.len();
                let var = *full_index.entry(*word).or_insert(next);
                if var == supports.len() {
                    supports.push(Vec::new());
                }
                vec![(var, 1.0)]
            }
            VariableModel::Isotropic => invariant_decomposition(word)
                .into_iter()
                .map(|(key, coeff)| {
                    let next = inv_index.len();
                    let var = *inv_index.entry(key).or_insert(next);
                    if var == supports.len() {
                        supports.push(Vec::new());
                    }
                    (var, coeff)
                })
                .collect(),
        };
        word_decomp.insert(*word, d.clone());
        d
    };

    for (u, v, entry) in structure.upper_cells() {
        let CellEntry::Term { sign, var } = entry else {
            continue;
        };
        let word = structure.variables()[var];
        if word.is_identity() {
            continue; // the fixed identity block of M(y)
        }
        let decomp = decomp_of(&word, &mut supports);
        for (var, coeff) in decomp {
            supports[var].push(SuppCell {
                row: u as u32,
                col: v as u32,
                coeff: sign as f64 * coeff,
            });
        }
    }

    // Objective: sum_e w_e (1 - L(x_i x_j) - L(y_i y_j) - L(z_i z_j)).
    let num_vars = supports.len();
    let mut c = vec![0.0; num_vars];
    let shift = graph.total_weight();
    for &(i, j, w) in graph.edges() {
        for letter in [Letter::X, Letter::Y, Letter::Z] {
            let word = PauliString::two_site(basis.n(), i, letter, j, letter)?;
            let Some(decomp) = word_decomp.get(&word) else {
                return Err(SdpError::InvalidInput(format!(
                    "objective word {word} is not reachable in the structure"
                )));
            };
            for &(var, coeff) in decomp {
                c[var] -= w * coeff;
            }
        }
    }

    // The parity-block filter is only sound when off-block moments are
    // pinned to zero, which the isotropic model does; the full model keeps
    // them free, so everything lives in one block.
    let block_of = match model {
        VariableModel::Isotropic => basis.words().iter().map(parity_block).collect(),
        VariableModel::FullWords => vec![0u8; basis.len()],
    };

    Ok(Assembled {
        m,
        num_vars,
        supports,
        c,
        shift,
        block_of,
    })
}

/// Parity class of a word under the global letter-flip group: the letter
/// counts mod 2 determine one of four blocks, and cells between different
/// blocks vanish for invariant functionals.
fn parity_block(word: &PauliString) -> u8 {
    let mut counts = [0u32; 3];
    for s in 0..word.n() {
        match word.letter(s) {
            Letter::I => {}
            Letter::X => counts[0] += 1,
            Letter::Y => counts[1] += 1,
            Letter::Z => counts[2] += 1,
        }
    }
    let g = [counts[0] % 2, counts[1] % 2, counts[2] % 2];
    match g {
        [0, 0, 0] | [1, 1, 1] => 0,
        [1, 0, 0] | [0, 1, 1] => 1,
        [0, 1, 0] | [1, 0, 1] => 2,
        _ => 3,
    }
}

/// Invariant-tensor decomposition of a reduced word of degree at most 4.
///
/// Degree 1 moments vanish (no invariant vector); degree-2 moments are
/// proportional to the letter-diagonal pair moment; degree-3 moments carry
/// the Levi-Civita sign of their letters; degree-4 moments decompose over
/// the three letter pairings.
fn invariant_decomposition(word: &PauliString) -> Vec<(InvKey, f64)> {
    let sites: Vec<usize> = (0..word.n())
        .filter(|&s| word.letter(s) != Letter::I)
        .collect();
    let letters: Vec<Letter> = sites.iter().map(|&s| word.letter(s)).collect();
    match sites.len() {
        0 | 1 => Vec::new(),
        2 => {
            if letters[0] == letters[1] {
                vec![(InvKey::Pair(sites[0] as u8, sites[1] as u8), 1.0)]
            } else {
                Vec::new()
            }
        }
        3 => {
            let eps = levi_civita(letters[0], letters[1], letters[2]);
            if eps == 0 {
                Vec::new()
            } else {
                vec![(
                    InvKey::Triple(sites[0] as u8, sites[1] as u8, sites[2] as u8),
                    eps as f64,
                )]
            }
        }
        4 => {
            let s = [
                sites[0] as u8,
                sites[1] as u8,
                sites[2] as u8,
                sites[3] as u8,
            ];
            let mut out = Vec::new();
            if letters[0] == letters[1] && letters[2] == letters[3] {
                out.push((InvKey::Quad(0, s), 1.0));
            }
            if letters[0] == letters[2] && letters[1] == letters[3] {
                out.push((InvKey::Quad(1, s), 1.0));
            }
            if letters[0] == letters[3] && letters[1] == letters[2] {
                out.push((InvKey::Quad(2, s), 1.0));
            }
            out
        }
        d => unreachable!("isotropic decomposition is limited to degree 4, got {d}"),
    }
}

fn levi_civita(a: Letter, b: Letter, c: Letter) -> i8 {
    use Letter::*;
    match (a, b, c) {
        (X, Y, Z) | (Y, Z, X) | (Z, X, Y) => 1,
        (X, Z, Y) | (Z, Y, X) | (Y, X, Z) => -1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::moment_basis;
    use crate::structure::build_moment_structure;

    #[test]
    fn variable_counts() {
        // n = 4, k = 2 isotropic: pairs C(4,2) + triples C(4,3) + 3 C(4,4).
        let basis = moment_basis(4, 2).unwrap();
        let structure = build_moment_structure(&basis).unwrap();
        let g = WeightedGraph::cycle(4);
        let iso = assemble(&basis, &structure, &g, VariableModel::Isotropic).unwrap();
        assert_eq!(iso.num_vars, 6 + 4 + 3);
        // Full model: all reachable non-identity real-phase words.
        let full = assemble(&basis, &structure, &g, VariableModel::FullWords).unwrap();
        assert!(full.num_vars > iso.num_vars);
    }

    #[test]
    fn k2_single_edge_has_one_invariant_variable() {
        let basis = moment_basis(2, 2).unwrap();
        let structure = build_moment_structure(&basis).unwrap();
        let g = WeightedGraph::unit(2, &[(0, 1)]).unwrap();
        let iso = assemble(&basis, &structure, &g, VariableModel::Isotropic).unwrap();
        assert_eq!(iso.num_vars, 1);
        // Objective coefficient collects -w over the three letter words.
        assert_eq!(iso.c, vec![-3.0]);
        assert_eq!(iso.shift, 1.0);
    }

    #[test]
    fn blocks_partition_cells() {
        let basis = moment_basis(3, 2).unwrap();
        let structure = build_moment_structure(&basis).unwrap();
        let g = WeightedGraph::complete(3);
        let iso = assemble(&basis, &structure, &g, VariableModel::Isotropic).unwrap();
        for supp in &iso.supports {
            for cell in supp {
                assert_eq!(
                    iso.block_of[cell.row as usize], iso.block_of[cell.col as usize],
                    "invariant cell crosses parity blocks"
                );
            }
        }
    }
}
