//! The Sergeev superalgebra `H_c(r)` on its standard basis `c^a σ`.
//!
//! Conventions: `σ c_j σ⁻¹ = c_{σ(j)}` and `στ = σ∘τ`. Both follow from the
//! defining relations `c_i s_i = s_i c_{i+1}` and `c_{i+1} s_i = s_i c_i`.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;

use crate::combinat::{all_permutations, young_subgroup, Composition, Permutation};
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Parity};

/// Normal-orders a Clifford word `c_{w1} c_{w2} ⋯`.
///
/// Returns the sign and the surviving generators as a bitmask (bit `j-1` for
/// `c_j`). Swapping distinct neighbours costs `-1`; equal neighbours cancel.
pub fn clifford_normalize(word: &[usize]) -> (i8, u32) {
    let mut set = 0u32;
    let mut sign = 1i8;
    for &x in word {
        debug_assert!(x >= 1);
        let bit = 1u32 << (x - 1);
        // move c_x left past every larger generator already present
        if (set & !((bit << 1) - 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        set ^= bit;
    }
    (sign, set)
}

/// Indices `j` with bit `j-1` set, increasing.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&k| mask >> k & 1 == 1).map(|k| k + 1).collect()
}

/// A standard basis element `c_1^{a_1} ⋯ c_r^{a_r} σ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SergeevBasisWord {
    /// Bit `j-1` holds `a_j`.
    pub primes: u32,
    pub perm: Permutation,
}

impl SergeevBasisWord {
    pub fn new(primes: u32, perm: Permutation) -> Self {
        debug_assert!(perm.rank() >= 32 || primes >> perm.rank() == 0);
        Self { primes, perm }
    }

    pub fn identity(r: usize) -> Self {
        Self { primes: 0, perm: Permutation::identity(r) }
    }

    pub fn rank(&self) -> usize {
        self.perm.rank()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.primes.count_ones() as usize)
    }

    /// Indices `j` with `a_j = 1`.
    pub fn prime_indices(&self) -> Vec<usize> {
        mask_indices(self.primes)
    }

    /// Product of two basis words: always `±` one basis word.
    pub fn multiply(&self, other: &Self) -> Result<(i8, Self)> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        let mut word = self.prime_indices();
        word.extend(other.prime_indices().into_iter().map(|j| self.perm.apply(j)));
        let (sign, primes) = clifford_normalize(&word);
        Ok((sign, Self { primes, perm: self.perm.compose(&other.perm) }))
    }

    /// Image under `H_c(k) ↪ H_c(r)`.
    pub fn embed(&self, r: usize) -> Self {
        Self { primes: self.primes, perm: self.perm.extend(r) }
    }
}

impl fmt::Display for SergeevBasisWord {
    /// `c1 c3 s2 s1`: primes first, then the reduced word of `σ`; `1` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut toks: Vec<String> = self.prime_indices().iter().map(|j| format!("c{j}")).collect();
        toks.extend(self.perm.reduced_word().iter().map(|i| format!("s{i}")));
        if toks.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&toks.join(" "))
        }
    }
}

impl fmt::Debug for SergeevBasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All `2^r · r!` standard basis words.
pub fn standard_basis(r: usize) -> Vec<SergeevBasisWord> {
    let perms = all_permutations(r);
    let mut out = Vec::with_capacity(perms.len() << r);
    for primes in 0..(1u32 << r) {
        for p in &perms {
            out.push(SergeevBasisWord::new(primes, p.clone()));
        }
    }
    out
}

/// A linear combination of standard basis words.
#[derive(Clone, PartialEq, Eq)]
pub struct SergeevElement {
    r: usize,
    terms: FxHashMap<SergeevBasisWord, GaussianRational>,
}

impl SergeevElement {
    pub fn zero(r: usize) -> Self {
        Self { r, terms: FxHashMap::default() }
    }

    pub fn identity(r: usize) -> Self {
        Self::from_word(SergeevBasisWord::identity(r))
    }

    pub fn from_word(w: SergeevBasisWord) -> Self {
        let r = w.rank();
        let mut terms = FxHashMap::default();
        terms.insert(w, GaussianRational::one());
        Self { r, terms }
    }

    /// The generator `s_i`.
    pub fn s(r: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= r {
            return Err(Error::IndexOutOfRange { index: i, max: r.saturating_sub(1) });
        }
        Ok(Self::from_word(SergeevBasisWord::new(0, Permutation::transposition(r, i))))
    }

    /// The generator `c_j`.
    pub fn c(r: usize, j: usize) -> Result<Self> {
        if j == 0 || j > r {
            return Err(Error::IndexOutOfRange { index: j, max: r });
        }
        Ok(Self::from_word(SergeevBasisWord::new(1 << (j - 1), Permutation::identity(r))))
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &SergeevBasisWord) -> GaussianRational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms sorted by basis word.
    pub fn terms(&self) -> Vec<(SergeevBasisWord, GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn add_term(&mut self, w: SergeevBasisWord, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self::zero(self.r);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    /// Bilinear extension of [`SergeevBasisWord::multiply`].
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::RankMismatch { left: self.r, right: other.r });
        }
        let mut out = Self::zero(self.r);
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let (sign, z) = x.multiply(y)?;
                out.add_term(z, (a * b).signed(sign < 0));
            }
        }
        Ok(out)
    }

    /// `None` when the element mixes parities.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|w| w.parity());
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn embed(&self, r: usize) -> Self {
        let mut out = Self::zero(r);
        for (w, c) in &self.terms {
            out.add_term(w.embed(r), c.clone());
        }
        out
    }

    /// Parses a product such as `c1 c3 s2 s1` (read left to right) in `H_c(r)`.
    pub fn parse_word(text: &str, r: usize) -> Result<Self> {
        let mut acc = Self::identity(r);
        for tok in text.split(|c: char| c.is_whitespace() || c == '*' || c == '·').filter(|t| !t.is_empty()) {
            let g = match tok.split_at(1) {
                ("s", n) => Self::s(r, n.parse().map_err(|_| Error::Parse(format!("bad generator '{tok}'")))?)?,
                ("c", n) => Self::c(r, n.parse().map_err(|_| Error::Parse(format!("bad generator '{tok}'")))?)?,
                _ if tok == "1" || tok == "e" => Self::identity(r),
                _ => return Err(Error::Parse(format!("bad generator '{tok}'"))),
            };
            acc = acc.multiply(&g)?;
        }
        Ok(acc)
    }

    /// Smallest rank in which every generator of `text` makes sense.
    pub fn min_rank(text: &str) -> usize {
        text.split(|c: char| c.is_whitespace() || c == '*' || c == '·')
            .filter_map(|t| {
                let (g, n) = t.split_at(t.len().min(1));
                let n: usize = n.parse().ok()?;
                match g {
                    "s" => Some(n + 1),
                    "c" => Some(n),
                    _ => None,
                }
            })
            .max()
            .unwrap_or(1)
    }
}

impl fmt::Display for SergeevElement {
    /// Terms as `+ c2 s1`, `- 1/2 c1`, joined by spaces; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(w, c)| {
                let word = w.to_string();
                if c.is_one() {
                    format!("+ {word}")
                } else if (-&c).is_one() {
                    format!("- {word}")
                } else if c.is_real() && c.re < 0 {
                    format!("- {} {word}", -&c)
                } else if c.is_real() {
                    format!("+ {c} {word}")
                } else {
                    format!("+ ({c}) {word}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for SergeevElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SergeevBasisWord {
    type Err = Error;

    /// Parses a word and requires it to be `+1` times a basis word, in the
    /// smallest rank that fits.
    fn from_str(s: &str) -> Result<Self> {
        let r = SergeevElement::min_rank(s);
        let e = SergeevElement::parse_word(s, r)?;
        match e.terms().as_slice() {
            [(w, c)] if c.is_one() => Ok(w.clone()),
            _ => Err(Error::Parse(format!("'{s}' is not a positive basis word"))),
        }
    }
}

/// `Σ_{σ∈S_λ} σ`.
pub fn young_symmetrizer(lambda: &Composition) -> SergeevElement {
    let r = lambda.total();
    let mut out = SergeevElement::zero(r);
    for p in young_subgroup(lambda) {
        out.add_term(SergeevBasisWord::new(0, p), GaussianRational::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str, r: usize) -> SergeevElement {
        SergeevElement::parse_word(s, r).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(clifford_normalize(&[2, 1]), (-1, 0b11));
        assert_eq!(clifford_normalize(&[1, 1]), (1, 0));
        assert_eq!(clifford_normalize(&[3, 1, 3]), (-1, 0b1));
    }

    #[test]
    fn word_products() {
        let s1: SergeevBasisWord = "s1".parse().unwrap();
        let c1 = SergeevBasisWord::new(1, Permutation::identity(2));
        let (sign, z) = s1.multiply(&c1).unwrap();
        assert_eq!((sign, z.to_string()), (1, "c2 s1".to_string()));
        let c2 = SergeevBasisWord::new(2, Permutation::identity(2));
        assert_eq!(c1.multiply(&c2).unwrap(), (1, SergeevBasisWord::new(3, Permutation::identity(2))));
        assert_eq!(c2.multiply(&c1).unwrap(), (-1, SergeevBasisWord::new(3, Permutation::identity(2))));
        assert_eq!(c1.multiply(&c1).unwrap(), (1, SergeevBasisWord::identity(2)));
    }

    #[test]
    fn defining_relations() {
        let r = 3;
        assert_eq!(el("s1 s2 s1", r), el("s2 s1 s2", r));
        assert_eq!(el("s1 s1", r), SergeevElement::identity(r));
        assert_eq!(el("c2 c2", r), SergeevElement::identity(r));
        assert_eq!(el("c1 c3", r), el("c3 c1", r).scale(&GaussianRational::from_int(-1)));
        for i in 1..r {
            assert_eq!(el(&format!("c{i} s{i}"), r), el(&format!("s{i} c{}", i + 1), r));
            assert_eq!(el(&format!("c{} s{i}", i + 1), r), el(&format!("s{i} c{i}"), r));
        }
    }

    #[test]
    fn clifford_square() {
        let x = el("c1", 2).add(&el("c2", 2));
        let sq = x.multiply(&x).unwrap();
        assert_eq!(sq, SergeevElement::identity(2).scale(&GaussianRational::from_int(2)));
    }

    #[test]
    fn basis_size() {
        assert_eq!(standard_basis(2).len(), 8);
        assert_eq!(standard_basis(3).len(), 48);
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(young_symmetrizer(&Composition::omega(3)), SergeevElement::identity(3));
        assert_eq!(young_symmetrizer(&Composition::from(&[2][..])).len(), 2);
        let y = young_symmetrizer(&Composition::from(&[2, 1][..]));
        assert_eq!(y, SergeevElement::identity(3).add(&el("s1", 3)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(el("s1", 2).multiply(&el("c1", 2)).unwrap().to_string(), "+ c2 s1");
        assert_eq!(el("c2 c1", 2).to_string(), "- c1 c2");
        assert_eq!(SergeevElement::zero(2).to_string(), "0");
    }
}
