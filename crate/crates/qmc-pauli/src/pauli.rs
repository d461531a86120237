use crate::error::PauliError;

/// Single-site Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

/// Tensor product of single-site Pauli letters on `n` sites.
///
/// Stored in symplectic form: site `i` carries an X factor iff bit `i` of
/// `x` is set and a Z factor iff bit `i` of `z` is set; both bits set means
/// the letter Y. As an operator the word equals `i^{#Y} * X^x Z^z`, which is
/// Hermitian and squares to the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(n: usize) -> Result<Self, PauliError> {
        if n > 64 {
            return Err(PauliError::TooManySites(n));
        }
        Ok(PauliString { n, x: 0, z: 0 })
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self, PauliError> {
        let mut word = Self::identity(letters.len())?;
        for (site, &l) in letters.iter().enumerate() {
            word.set_letter(site, l)?;
        }
        Ok(word)
    }

    /// Word with a single non-identity letter.
    pub fn single(n: usize, site: usize, letter: Letter) -> Result<Self, PauliError> {
        let mut word = Self::identity(n)?;
        word.set_letter(site, letter)?;
        Ok(word)
    }

    /// Word with two non-identity letters.
    pub fn two_site(
        n: usize,
        site_a: usize,
        letter_a: Letter,
        site_b: usize,
        letter_b: Letter,
    ) -> Result<Self, PauliError> {
        let mut word = Self::identity(n)?;
        word.set_letter(site_a, letter_a)?;
        word.set_letter(site_b, letter_b)?;
        Ok(word)
    }

    pub fn set_letter(&mut self, site: usize, letter: Letter) -> Result<(), PauliError> {
        if site >= self.n {
            return Err(PauliError::SiteOutOfRange { site, n: self.n });
        }
        let bit = 1u64 << site;
        self.x &= !bit;
        self.z &= !bit;
        match letter {
            Letter::I => {}
            Letter::X => self.x |= bit,
            Letter::Y => {
                self.x |= bit;
                self.z |= bit;
            }
            Letter::Z => self.z |= bit,
        }
        Ok(())
    }

    pub fn letter(&self, site: usize) -> Letter {
        let bit = 1u64 << site;
        match (self.x & bit != 0, self.z & bit != 0) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n).map(|s| self.letter(s)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Bitmask of sites carrying a non-identity letter.
    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    /// Number of non-identity letters (the degree of the word).
    pub fn degree(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Number of Y letters.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in 0..self.n {
            let c = match self.letter(s) {
                Letter::I => 'I',
                Letter::X => 'X',
                Letter::Y => 'Y',
                Letter::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A Pauli word together with a quarter phase: the operator `i^q * word`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhasedPauli {
    /// Exponent of the imaginary unit, reduced mod 4.
    pub phase_q: u8,
    pub word: PauliString,
}

impl PhasedPauli {
    /// True iff the phase is +1 or -1.
    pub fn is_real(&self) -> bool {
        self.phase_q % 2 == 0
    }

    /// The sign for real phases: +1 for q=0, -1 for q=2.
    pub fn real_sign(&self) -> Option<f64> {
        match self.phase_q {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }
}

/// Sitewise product of two Pauli words.
///
/// Uses the symplectic composition: with `w = i^{#Y} X^x Z^z`,
/// `a * b = i^q c` where `c` has masks `xa ^ xb`, `za ^ zb` and
/// `q = #Y(a) + #Y(b) - #Y(c) + 2 * |za & xb|  (mod 4)`.
pub fn pauli_product(a: &PauliString, b: &PauliString) -> Result<PhasedPauli, PauliError> {
    if a.n != b.n {
        return Err(PauliError::SiteMismatch(a.n, b.n));
    }
    let x = a.x ^ b.x;
    let z = a.z ^ b.z;
    let word = PauliString { n: a.n, x, z };
    let anticommutes = (a.z & b.x).count_ones();
    let q = (a.y_count() as i64 + b.y_count() as i64 - word.y_count() as i64
        + 2 * anticommutes as i64)
        .rem_euclid(4) as u8;
    Ok(PhasedPauli { phase_q: q, word })
}
