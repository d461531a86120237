use crate::error::SdpError;
use qmc_pauli::{Letter, PauliString};
use std::collections::HashMap;

/// Canonically ordered reduced Pauli words of degree at most `k`:
/// products of single-site letters on distinct sites. Ordered by support
/// size, then site indices, then letter codes (X < Y < Z).
#[derive(Debug, Clone)]
pub struct MomentBasis {
    n: usize,
    k: usize,
    words: Vec<PauliString>,
    index: HashMap<PauliString, usize>,
}

impl MomentBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[PauliString] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &PauliString {
        &self.words[i]
    }

    pub fn position(&self, w: &PauliString) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// All reduced words of degree `<= k` on `n` sites, identity first.
///
/// The count is `sum_{i=0}^{k} 3^i C(n, i)`.
pub fn moment_basis(n: usize, k: usize) -> Result<MomentBasis, SdpError> {
    if k == 0 {
        return Err(SdpError::BadLevel(k));
    }
    if n > 64 {
        return Err(SdpError::InstanceTooLarge(format!("{n} sites")));
    }
    let k = k.min(n);
    let mut words = vec![PauliString::identity(n)?];
    for size in 1..=k {
        let mut sites: Vec<usize> = Vec::new();
        gen_supports_of_size(n, size, 0, &mut sites, &mut words)?;
    }
    let index = words
        .iter()
        .enumerate()
        .map(|(i, w)| (*w, i))
        .collect::<HashMap<_, _>>();
    Ok(MomentBasis { n, k, words, index })
}

fn gen_supports_of_size(
    n: usize,
    size: usize,
    start: usize,
    sites: &mut Vec<usize>,
    out: &mut Vec<PauliString>,
) -> Result<(), SdpError> {
    if sites.len() == size {
        return emit_letterings(n, sites, out);
    }
    for s in start..n {
        sites.push(s);
        gen_supports_of_size(n, size, s + 1, sites, out)?;
        sites.pop();
    }
    Ok(())
}

fn emit_letterings(n: usize, sites: &[usize], out: &mut Vec<PauliString>) -> Result<(), SdpError> {
    let letters = [Letter::X, Letter::Y, Letter::Z];
    let count = 3usize.pow(sites.len() as u32);
    for code in 0..count {
        let mut w = PauliString::identity(n)?;
        let mut c = code;
        for &site in sites {
            w.set_letter(site, letters[c % 3])?;
            c /= 3;
        }
        out.push(w);
    }
    Ok(())
}
