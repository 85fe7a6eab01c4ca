//! Permutation supermodules `M^λ`, the tensor-space model `V^{⊗r}` and the
//! actions of `H_c(r)` and of the Schur generators.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::combinat::Composition;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::sergeev::SergeevElement;
use crate::tabloid::OmegaTabloid;
use crate::MAX_R;

/// Sparse map from basis keys to nonzero coefficients.
pub type SparseVec<K> = FxHashMap<K, GaussianRational>;

/// Adds `c` to the coefficient of `k`, dropping it if it becomes zero.
pub fn add_term<K: std::hash::Hash + Eq>(v: &mut SparseVec<K>, k: K, c: GaussianRational) {
    if c.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match v.entry(k) {
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

/// An element of `M^λ` in the supertabloid basis.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleVector {
    pub shape: Composition,
    pub terms: SparseVec<OmegaTabloid>,
}

impl ModuleVector {
    pub fn zero(shape: Composition) -> Self {
        Self { shape, terms: SparseVec::default() }
    }

    pub fn basis(t: OmegaTabloid) -> Self {
        let mut terms = SparseVec::default();
        terms.insert(t, GaussianRational::one());
        Self { shape: t.shape(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: OmegaTabloid, c: GaussianRational) {
        add_term(&mut self.terms, t, c);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(*t, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self::zero(self.shape.clone());
        for (t, c) in &self.terms {
            out.add_term(*t, c * s);
        }
        out
    }

    pub fn coefficient(&self, t: &OmegaTabloid) -> GaussianRational {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    /// Terms sorted by the basis order.
    pub fn sorted_terms(&self) -> Vec<(OmegaTabloid, GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(t, c)| (t.sort_key(), *t, c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v.into_iter().map(|(_, t, c)| (t, c)).collect()
    }

    fn rank(&self) -> usize {
        self.shape.total()
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.sorted_terms().iter().map(|(t, c)| format!("({c})·{t}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `s_i.T = (-1)^{|T_i||T_{i+1}|} T_{i↔i+1}` on a single tabloid (0-based `i`).
#[inline]
pub fn act_s_basis(i: usize, t: &OmegaTabloid) -> (bool, OmegaTabloid) {
    (t.is_primed0(i) && t.is_primed0(i + 1), t.swapped0(i))
}

/// `c_j.T = (-1)^{|T_1|+⋯+|T_j|} i T_{j→j'}`: returns the sign flag (the
/// factor `i` is implicit) for 0-based `j`.
#[inline]
pub fn act_c_basis(j: usize, t: &OmegaTabloid) -> (bool, OmegaTabloid) {
    (t.parity_before0(j + 1), t.toggled0(j))
}

fn check_index(i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        Err(Error::IndexOutOfRange { index: i, max })
    } else {
        Ok(())
    }
}

/// Action of `s_i` (1-based) on `M^λ`.
pub fn act_s(i: usize, v: &ModuleVector) -> Result<ModuleVector> {
    check_index(i, v.rank().saturating_sub(1))?;
    let mut out = ModuleVector::zero(v.shape.clone());
    for (t, c) in &v.terms {
        let (neg, u) = act_s_basis(i - 1, t);
        out.add_term(u, c.clone().signed(neg));
    }
    Ok(out)
}

/// Action of `c_j` (1-based) on `M^λ`.
pub fn act_c(j: usize, v: &ModuleVector) -> Result<ModuleVector> {
    check_index(j, v.rank())?;
    let mut out = ModuleVector::zero(v.shape.clone());
    for (t, c) in &v.terms {
        let (neg, u) = act_c_basis(j - 1, t);
        out.add_term(u, c.mul_i().signed(neg));
    }
    Ok(out)
}

/// Action of an element of `H_c(r)`: each basis word `c^a σ` acts through the
/// reduced word of `σ` (rightmost letter first) followed by `c_r, …, c_1`.
pub fn act_element(x: &SergeevElement, v: &ModuleVector) -> Result<ModuleVector> {
    if x.rank() != v.rank() {
        return Err(Error::RankMismatch { left: x.rank(), right: v.rank() });
    }
    let mut out = ModuleVector::zero(v.shape.clone());
    for (w, coeff) in x.terms() {
        let mut cur = v.clone();
        for &i in w.perm.reduced_word().iter().rev() {
            cur = act_s(i, &cur)?;
        }
        for &j in w.prime_indices().iter().rev() {
            cur = act_c(j, &cur)?;
        }
        out = out.add(&cur.scale(&coeff));
    }
    Ok(out)
}

/// A monomial `v_{i_1} ⊗ ⋯ ⊗ v_{i_r}` with `i_k ∈ I(n|n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorMonomial {
    r: u8,
    /// 0-based underlying letter per slot.
    letters: [u8; MAX_R],
    /// Bit `k` marks slot `k` as barred.
    bars: u32,
}

impl TensorMonomial {
    /// From `(letter, barred)` pairs with 1-based letters.
    pub fn new(indices: &[(usize, bool)]) -> Result<Self> {
        if indices.len() > MAX_R {
            return Err(Error::TooLarge(indices.len()));
        }
        let mut letters = [0u8; MAX_R];
        let mut bars = 0;
        for (k, &(l, b)) in indices.iter().enumerate() {
            if l == 0 {
                return Err(Error::Parse("tensor letters start at 1".into()));
            }
            letters[k] = (l - 1) as u8;
            if b {
                bars |= 1 << k;
            }
        }
        Ok(Self { r: indices.len() as u8, letters, bars })
    }

    pub fn r(&self) -> usize {
        self.r as usize
    }

    /// `(letter, barred)` pairs with 1-based letters.
    pub fn indices(&self) -> Vec<(usize, bool)> {
        (0..self.r()).map(|k| (self.letters[k] as usize + 1, self.bars >> k & 1 == 1)).collect()
    }

    #[inline]
    pub fn letter0(&self, k: usize) -> usize {
        self.letters[k] as usize
    }

    #[inline]
    pub fn is_barred(&self, k: usize) -> bool {
        self.bars >> k & 1 == 1
    }

    #[inline]
    fn parity_before(&self, k: usize) -> bool {
        (self.bars & ((1u32 << k) - 1)).count_ones() % 2 == 1
    }

    /// The weight `λ ∈ Λ(n, r)`.
    pub fn weight(&self, n: usize) -> Composition {
        let mut parts = vec![0; n];
        for k in 0..self.r() {
            parts[self.letter0(k)] += 1;
        }
        Composition::new(parts)
    }

    #[inline]
    fn with_slot(&self, k: usize, letter0: usize, barred: bool) -> Self {
        let mut m = *self;
        m.letters[k] = letter0 as u8;
        if barred {
            m.bars |= 1 << k;
        } else {
            m.bars &= !(1 << k);
        }
        m
    }

    /// The supertabloid with letter `j` (primed iff slot `j` is barred) in row
    /// `underline(i_j)`; `n` rows.
    pub fn to_tabloid(&self, n: usize) -> Result<OmegaTabloid> {
        OmegaTabloid::from_parts(n, &self.letters[..self.r()], self.bars)
    }

    /// Inverse of [`TensorMonomial::to_tabloid`].
    pub fn from_tabloid(t: &OmegaTabloid) -> Self {
        let mut letters = [0u8; MAX_R];
        for (h, l) in letters.iter_mut().enumerate().take(t.r()) {
            *l = t.row0(h) as u8;
        }
        Self { r: t.r() as u8, letters, bars: t.primes() }
    }

    /// All `(2n)^r` monomials, sorted.
    pub fn all(n: usize, r: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let total = (n as u64).pow(r as u32);
        for code in 0..total {
            let mut letters = [0u8; MAX_R];
            let mut c = code;
            for l in letters.iter_mut().take(r) {
                *l = (c % n as u64) as u8;
                c /= n as u64;
            }
            for bars in 0..(1u32 << r) {
                out.push(Self { r: r as u8, letters, bars });
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.indices().iter().map(|&(l, b)| if b { format!("v{l}\u{304}") } else { format!("v{l}") }).collect();
        f.write_str(&parts.join("⊗"))
    }
}

impl fmt::Debug for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A vector of `V^{⊗r}` in the monomial basis.
pub type TensorVector = SparseVec<TensorMonomial>;

/// A generator of `H_c(r)` (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HGen {
    S(usize),
    C(usize),
}

/// Action of `s_i` or `c_j` on a monomial.
pub fn act_tensor(g: HGen, m: &TensorMonomial) -> Result<TensorVector> {
    let r = m.r();
    let mut out = TensorVector::default();
    match g {
        HGen::S(i) => {
            check_index(i, r.saturating_sub(1))?;
            let (a, b) = (i - 1, i);
            let neg = m.is_barred(a) && m.is_barred(b);
            let u = m.with_slot(a, m.letter0(b), m.is_barred(b)).with_slot(b, m.letter0(a), m.is_barred(a));
            add_term(&mut out, u, GaussianRational::one().signed(neg));
        }
        HGen::C(j) => {
            check_index(j, r)?;
            let k = j - 1;
            // (-1)^{|u_1|+⋯+|u_{j-1}|} then P(v_i) = (-1)^{|i|} √-1 v_ī
            let neg = m.parity_before(k) ^ m.is_barred(k);
            let u = m.with_slot(k, m.letter0(k), !m.is_barred(k));
            add_term(&mut out, u, GaussianRational::i().signed(neg));
        }
    }
    Ok(out)
}

/// A Schur generator (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SchurGen {
    E(usize),
    F(usize),
    EBar(usize),
    FBar(usize),
    HBar(usize),
    One(Composition),
}

impl SchurGen {
    pub fn is_odd(&self) -> bool {
        matches!(self, SchurGen::EBar(_) | SchurGen::FBar(_) | SchurGen::HBar(_))
    }
}

impl fmt::Display for SchurGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchurGen::E(i) => write!(f, "e{i}"),
            SchurGen::F(i) => write!(f, "f{i}"),
            SchurGen::EBar(i) => write!(f, "e{i}bar"),
            SchurGen::FBar(i) => write!(f, "f{i}bar"),
            SchurGen::HBar(j) => write!(f, "h{j}bar"),
            SchurGen::One(l) => write!(f, "1_({l})"),
        }
    }
}

/// Action on one tensor factor `v_k`: the new (0-based letter, bar) if nonzero.
fn act_single(g: &SchurGen, letter0: usize, barred: bool) -> Option<(usize, bool)> {
    let u = letter0 + 1;
    match *g {
        SchurGen::E(i) if u == i + 1 => Some((letter0 - 1, barred)),
        SchurGen::F(i) if u == i => Some((letter0 + 1, barred)),
        SchurGen::EBar(i) if u == i + 1 => Some((letter0 - 1, !barred)),
        SchurGen::FBar(i) if u == i => Some((letter0 + 1, !barred)),
        SchurGen::HBar(j) if u == j => Some((letter0, !barred)),
        _ => None,
    }
}

/// Action of a Schur generator on `V^{⊗r}` with `V = C^{n|n}`.
///
/// `1_λ` projects onto weight `λ`; the other generators act by the signed
/// Leibniz rule, odd ones picking up the parity of the earlier slots.
pub fn schur_act(g: &SchurGen, n: usize, v: &TensorVector) -> Result<TensorVector> {
    match *g {
        SchurGen::E(i) | SchurGen::F(i) | SchurGen::EBar(i) | SchurGen::FBar(i) => check_index(i, n.saturating_sub(1))?,
        SchurGen::HBar(j) => check_index(j, n)?,
        SchurGen::One(ref l) => {
            if l.len() != n {
                return Err(Error::SizeMismatch(format!("weight {l:?} has {} parts, expected {n}", l.len())));
            }
        }
    }
    let mut out = TensorVector::default();
    if let SchurGen::One(ref l) = *g {
        for (m, c) in v {
            if &m.weight(n) == l {
                add_term(&mut out, *m, c.clone());
            }
        }
        return Ok(out);
    }
    let odd = g.is_odd();
    for (m, c) in v {
        for k in 0..m.r() {
            if let Some((l, b)) = act_single(g, m.letter0(k), m.is_barred(k)) {
                let neg = odd && m.parity_before(k);
                add_term(&mut out, m.with_slot(k, l, b), c.clone().signed(neg));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::enumerate_compositions;
    use crate::combinat::CompositionMode;
    use crate::sergeev::{standard_basis, SergeevBasisWord};
    use crate::tabloid::{omega_basis, Supertabloid};

    fn tab(s: &str) -> OmegaTabloid {
        OmegaTabloid::from_supertabloid(&s.parse::<Supertabloid>().unwrap()).unwrap()
    }

    fn vec_of(s: &str) -> ModuleVector {
        ModuleVector::basis(tab(s))
    }

    #[test]
    fn c3_on_sample_tabloid() {
        let v = act_c(3, &vec_of("[3',6'],[2],[1,4',5]")).unwrap();
        let mut expected = ModuleVector::zero(v.shape.clone());
        expected.add_term(tab("[3,6'],[2],[1,4',5]"), -GaussianRational::i());
        assert_eq!(v, expected);
    }

    #[test]
    fn s1_on_two_primes() {
        let v = act_s(1, &vec_of("[1'],[2']")).unwrap();
        let mut expected = ModuleVector::zero(v.shape.clone());
        expected.add_term(tab("[2'],[1']"), GaussianRational::from_int(-1));
        assert_eq!(v, expected);
    }

    #[test]
    fn c1_on_single_box() {
        let v = act_c(1, &vec_of("[1]")).unwrap();
        let mut expected = ModuleVector::zero(v.shape.clone());
        expected.add_term(tab("[1']"), GaussianRational::i());
        assert_eq!(v, expected);
    }

    #[test]
    fn generators_square_to_one_and_anticommute() {
        let lambda = Composition::from(&[2, 1][..]);
        for t in omega_basis(&lambda).unwrap() {
            let v = ModuleVector::basis(t);
            for i in 1..3 {
                assert_eq!(act_s(i, &act_s(i, &v).unwrap()).unwrap(), v);
            }
            for j in 1..=3 {
                assert_eq!(act_c(j, &act_c(j, &v).unwrap()).unwrap(), v);
                for k in 1..=3 {
                    if k != j {
                        let a = act_c(j, &act_c(k, &v).unwrap()).unwrap();
                        let b = act_c(k, &act_c(j, &v).unwrap()).unwrap();
                        assert_eq!(a, b.scale(&GaussianRational::from_int(-1)));
                    }
                }
            }
        }
    }

    #[test]
    fn representation_property() {
        for r in 1..=3 {
            let words = standard_basis(r);
            for lambda in enumerate_compositions(r, r, CompositionMode::TrailingZeros) {
                let basis = omega_basis(&lambda).unwrap();
                for x in &words {
                    for y in &words {
                        let (sign, z) = x.multiply(y).unwrap();
                        let xe = SergeevElement::from_word(x.clone());
                        let ye = SergeevElement::from_word(y.clone());
                        let ze = SergeevElement::from_word(z);
                        for t in basis.iter().step_by(3) {
                            let v = ModuleVector::basis(*t);
                            let lhs = act_element(&xe, &act_element(&ye, &v).unwrap()).unwrap();
                            let rhs = act_element(&ze, &v).unwrap().scale(&GaussianRational::from_int(sign as i64));
                            assert_eq!(lhs, rhs, "x={x} y={y} T={t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn regular_module_is_free() {
        // x ↦ x.T⁰ sends the standard basis bijectively onto the basis up to scalars
        for r in 1..=3 {
            let t0 = OmegaTabloid::from_parts(r, &(0..r as u8).collect::<Vec<_>>(), 0).unwrap();
            let mut seen = std::collections::HashSet::new();
            for w in standard_basis(r) {
                let v = act_element(&SergeevElement::from_word(w), &ModuleVector::basis(t0)).unwrap();
                assert_eq!(v.terms.len(), 1);
                seen.insert(*v.terms.keys().next().unwrap());
            }
            assert_eq!(seen.len(), omega_basis(&Composition::omega(r)).unwrap().len());
        }
    }

    #[test]
    fn sample_monomial_bijection() {
        let m = TensorMonomial::new(&[(3, false), (2, false), (1, true), (3, true), (3, false), (1, true)]).unwrap();
        assert_eq!(m.to_tabloid(3).unwrap(), tab("[3',6'],[2],[1,4',5]"));
        assert_eq!(TensorMonomial::from_tabloid(&m.to_tabloid(3).unwrap()), m);
    }

    #[test]
    fn bijection_preserves_parity() {
        let ms = TensorMonomial::all(2, 2);
        assert_eq!(ms.len(), 16);
        for m in ms {
            let t = m.to_tabloid(2).unwrap();
            assert_eq!(t.parity().is_odd(), m.indices().iter().filter(|x| x.1).count() % 2 == 1);
        }
    }

    #[test]
    fn tensor_action_matches_tabloid_action() {
        for r in 1..=3 {
            let n = r;
            for m in TensorMonomial::all(n, r) {
                let t = m.to_tabloid(n).unwrap();
                let mut gens: Vec<HGen> = (1..r).map(HGen::S).collect();
                gens.extend((1..=r).map(HGen::C));
                for g in gens {
                    let tv = act_tensor(g, &m).unwrap();
                    let mv = match g {
                        HGen::S(i) => act_s(i, &ModuleVector::basis(t)).unwrap(),
                        HGen::C(j) => act_c(j, &ModuleVector::basis(t)).unwrap(),
                    };
                    let mapped: SparseVec<OmegaTabloid> =
                        tv.iter().map(|(k, c)| (k.to_tabloid(n).unwrap(), c.clone())).collect();
                    assert_eq!(mapped, mv.terms, "{g:?} on {m}");
                }
            }
        }
    }

    #[test]
    fn c1_on_v1() {
        let m = TensorMonomial::new(&[(1, false)]).unwrap();
        let v = act_tensor(HGen::C(1), &m).unwrap();
        let expected = TensorMonomial::new(&[(1, true)]).unwrap();
        assert_eq!(v.get(&expected), Some(&GaussianRational::i()));
        let s = TensorMonomial::new(&[(1, false), (2, false)]).unwrap();
        let v = act_tensor(HGen::S(1), &s).unwrap();
        assert_eq!(v.get(&TensorMonomial::new(&[(2, false), (1, false)]).unwrap()), Some(&GaussianRational::one()));
    }

    #[test]
    fn h_bar_flips_bar() {
        let m = TensorMonomial::new(&[(1, false)]).unwrap();
        let mb = TensorMonomial::new(&[(1, true)]).unwrap();
        let v: TensorVector = [(m, GaussianRational::one())].into_iter().collect();
        let w = schur_act(&SchurGen::HBar(1), 1, &v).unwrap();
        assert_eq!(w.get(&mb), Some(&GaussianRational::one()));
        let w2 = schur_act(&SchurGen::HBar(1), 1, &w).unwrap();
        assert_eq!(w2, v);
    }

    #[test]
    fn element_action_matches_word() {
        let t = tab("[1,3'],[2]");
        let v = ModuleVector::basis(t);
        let x = SergeevElement::parse_word("s1 c1", 3).unwrap();
        let direct = act_s(1, &act_c(1, &v).unwrap()).unwrap();
        assert_eq!(act_element(&x, &v).unwrap(), direct);
        let _ = SergeevBasisWord::identity(3);
    }
}
