//! The Schur superalgebra of type Q acting on `V^{⊗r}`: generator matrices,
//! divided powers and a check of the defining presentation.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::combinat::{enumerate_compositions, factorial, Composition, CompositionMode};
use crate::error::{Error, Result};
use crate::permod::{act_tensor, add_term, schur_act, HGen, SchurGen, TensorMonomial, TensorVector};
use crate::scalar::GaussianRational;

/// A linear operator on `V^{⊗r}` stored by the images of monomials.
#[derive(Clone, Default)]
pub struct EndoMatrix {
    cols: FxHashMap<TensorMonomial, TensorVector>,
}

impl EndoMatrix {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity(n: usize, r: usize) -> Self {
        let mut cols = FxHashMap::default();
        for m in TensorMonomial::all(n, r) {
            let mut v = TensorVector::default();
            v.insert(m, GaussianRational::one());
            cols.insert(m, v);
        }
        Self { cols }
    }

    /// Matrix of a single generator.
    pub fn generator(g: &SchurGen, n: usize, r: usize) -> Result<Self> {
        let mut cols = FxHashMap::default();
        for m in TensorMonomial::all(n, r) {
            let mut v = TensorVector::default();
            v.insert(m, GaussianRational::one());
            let img = schur_act(g, n, &v)?;
            if !img.is_empty() {
                cols.insert(m, img);
            }
        }
        Ok(Self { cols })
    }

    /// Matrix of an `H_c(r)` generator.
    pub fn h_generator(g: HGen, n: usize, r: usize) -> Result<Self> {
        let mut cols = FxHashMap::default();
        for m in TensorMonomial::all(n, r) {
            cols.insert(m, act_tensor(g, &m)?);
        }
        Ok(Self { cols })
    }

    pub fn apply(&self, v: &TensorVector) -> TensorVector {
        let mut out = TensorVector::default();
        for (m, c) in v {
            if let Some(col) = self.cols.get(m) {
                for (k, x) in col {
                    add_term(&mut out, *k, c * x);
                }
            }
        }
        out
    }

    /// Image of one monomial.
    pub fn column(&self, m: &TensorMonomial) -> TensorVector {
        self.cols.get(m).cloned().unwrap_or_default()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut cols = FxHashMap::default();
        for (m, v) in &other.cols {
            let img = self.apply(v);
            if !img.is_empty() {
                cols.insert(*m, img);
            }
        }
        Self { cols }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.lin(other, &GaussianRational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.lin(other, &GaussianRational::from_int(-1))
    }

    /// `self + s·other`.
    fn lin(&self, other: &Self, s: &GaussianRational) -> Self {
        let mut cols = self.cols.clone();
        for (m, v) in &other.cols {
            let col = cols.entry(*m).or_default();
            for (k, x) in v {
                add_term(col, *k, x * s);
            }
            if col.is_empty() {
                cols.remove(m);
            }
        }
        Self { cols }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { cols: self.cols.iter().map(|(m, v)| (*m, v.iter().map(|(k, x)| (*k, x * s)).collect())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.values().all(|v| v.is_empty())
    }

    /// `j`-th power divided by `j!`.
    pub fn divided_power(&self, j: usize, n: usize, r: usize) -> Self {
        let mut p = Self::identity(n, r);
        for _ in 0..j {
            p = self.compose(&p);
        }
        p.scale(&GaussianRational::ratio(1, factorial(j) as i64))
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.cols.values().map(|v| v.len()).sum()
    }
}

impl PartialEq for EndoMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Debug for EndoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EndoMatrix({} nonzeros)", self.nnz())
    }
}

/// A product `x_1^{(a_1)} x_2^{(a_2)} ⋯` of Schur generators; the rightmost
/// factor acts first. Exponents other than 1 are only allowed on `e_i`, `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurWord {
    pub factors: Vec<(SchurGen, usize)>,
}

impl SchurWord {
    pub fn new(factors: Vec<(SchurGen, usize)>) -> Result<Self> {
        for (g, a) in &factors {
            if *a == 0 || (*a > 1 && !matches!(g, SchurGen::E(_) | SchurGen::F(_))) {
                return Err(Error::InvalidWeb(format!("exponent {a} not allowed on {g}")));
            }
        }
        Ok(Self { factors })
    }

    pub fn gen(g: SchurGen) -> Self {
        Self { factors: vec![(g, 1)] }
    }
}

impl fmt::Display for SchurWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(g, a)| if *a == 1 { g.to_string() } else { format!("{g}^({a})") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Matrix of a Schur word on `(C^{n|n})^{⊗r}`.
pub fn schur_word_matrix(w: &SchurWord, n: usize, r: usize) -> Result<EndoMatrix> {
    let mut acc = EndoMatrix::identity(n, r);
    for (g, a) in w.factors.iter().rev() {
        let m = EndoMatrix::generator(g, n, r)?;
        let m = if *a == 1 { m } else { m.divided_power(*a, n, r) };
        acc = m.compose(&acc);
    }
    Ok(acc)
}

/// One instantiated relation and whether it held.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
}

/// Outcome of [`verify_schur_relations`].
#[derive(Clone, Debug, Default)]
pub struct SchurReport {
    pub checks: Vec<RelationCheck>,
}

impl SchurReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// `(relation family, instances, failures)` in order of first appearance.
    pub fn summary(&self) -> Vec<(String, usize, usize)> {
        let mut out: Vec<(String, usize, usize)> = Vec::new();
        for c in &self.checks {
            let fam = c.name.split(':').next().unwrap_or("").to_string();
            match out.iter_mut().find(|e| e.0 == fam) {
                Some(e) => {
                    e.1 += 1;
                    e.2 += usize::from(!c.passed);
                }
                None => out.push((fam, 1, usize::from(!c.passed))),
            }
        }
        out
    }
}

struct Gens {
    n: usize,
    r: usize,
    cache: FxHashMap<SchurGen, EndoMatrix>,
}

impl Gens {
    fn get(&mut self, g: SchurGen) -> EndoMatrix {
        let (n, r) = (self.n, self.r);
        self.cache.entry(g.clone()).or_insert_with(|| EndoMatrix::generator(&g, n, r).expect("valid generator")).clone()
    }

    fn one(&mut self, l: &Composition) -> EndoMatrix {
        self.get(SchurGen::One(l.clone()))
    }

    fn prod(&mut self, gs: &[SchurGen]) -> EndoMatrix {
        let mut acc = EndoMatrix::identity(self.n, self.r);
        for g in gs.iter().rev() {
            acc = self.get(g.clone()).compose(&acc);
        }
        acc
    }
}

fn shifted(l: &Composition, i: usize, sign: i64) -> Option<Composition> {
    // λ + sign·α_i
    let mut p: Vec<i64> = l.parts.iter().map(|&x| x as i64).collect();
    p[i - 1] += sign;
    p[i] -= sign;
    p.iter().all(|&x| x >= 0).then(|| Composition::new(p.into_iter().map(|x| x as usize).collect()))
}

/// Instantiates every defining relation for every `λ ∈ Λ(n, r)` and every
/// admissible index, comparing matrices exactly. Also checks that each
/// generator supercommutes with `s_i` and `c_j`.
pub fn verify_schur_relations(n: usize, r: usize) -> Result<SchurReport> {
    use SchurGen::*;
    let mut g = Gens { n, r, cache: FxHashMap::default() };
    let mut report = SchurReport::default();
    let mut push = |name: String, lhs: EndoMatrix, rhs: EndoMatrix| {
        let passed = lhs == rhs;
        report.checks.push(RelationCheck { name, passed });
    };
    let weights = enumerate_compositions(n, r, CompositionMode::All);
    let id = EndoMatrix::identity(n, r);
    let zero = EndoMatrix::zero();
    let int = |k: i64| GaussianRational::from_int(k);

    // weight idempotents and the odd Cartan elements
    let mut sum = EndoMatrix::zero();
    for l in &weights {
        sum = sum.add(&g.one(l));
        for m in &weights {
            let lhs = g.one(l).compose(&g.one(m));
            let rhs = if l == m { g.one(l) } else { EndoMatrix::zero() };
            push(format!("weights: idempotents: λ={l:?} μ={m:?}"), lhs, rhs);
        }
    }
    push("weights: sum of idempotents".into(), sum, id.clone());
    for l in &weights {
        let p = g.one(l);
        for i in 1..=n {
            push(format!("weights: h commutes with 1_λ: i={i} λ={l:?}"), g.get(HBar(i)).compose(&p), p.compose(&g.get(HBar(i))));
            for j in 1..=n {
                let lhs = g.prod(&[HBar(i), HBar(j)]).add(&g.prod(&[HBar(j), HBar(i)])).compose(&p);
                let rhs = if i == j { p.scale(&int(2 * l.parts[i - 1] as i64)) } else { zero.clone() };
                push(format!("weights: hh anticommutator: i={i} j={j} λ={l:?}"), lhs, rhs);
            }
            if l.parts[i - 1] == 0 {
                push(format!("weights: h kills empty weight: i={i} λ={l:?}"), g.get(HBar(i)).compose(&p), zero.clone());
            }
        }
    }

    // e and f shift weights
    for l in &weights {
        let p = g.one(l);
        for i in 1..n {
            for (x, sign) in [(E(i), 1), (F(i), -1), (EBar(i), 1), (FBar(i), -1)] {
                let gx = g.get(x.clone());
                let rhs = match shifted(l, i, sign) {
                    Some(t) => g.one(&t).compose(&gx),
                    None => zero.clone(),
                };
                push(format!("weight shift: right weight: {x} λ={l:?}"), gx.compose(&p), rhs);
                let rhs = match shifted(l, i, -sign) {
                    Some(t) => gx.compose(&g.one(&t)),
                    None => zero.clone(),
                };
                push(format!("weight shift: left weight: {x} λ={l:?}"), p.compose(&gx), rhs);
            }
        }
    }

    // brackets with the odd Cartan elements
    for l in &weights {
        let p = g.one(l);
        let comm = |g: &mut Gens, a: SchurGen, b: SchurGen| g.prod(&[a.clone(), b.clone()]).sub(&g.prod(&[b, a])).compose(&p);
        let anti = |g: &mut Gens, a: SchurGen, b: SchurGen| g.prod(&[a.clone(), b.clone()]).add(&g.prod(&[b, a])).compose(&p);
        for i in 1..=n {
            if i < n {
                push(format!("h brackets: [h_i, e_i]: i={i} λ={l:?}"), comm(&mut g, HBar(i), E(i)), g.get(EBar(i)).compose(&p));
                push(format!("h brackets: [h_i, f_i]: i={i} λ={l:?}"), comm(&mut g, HBar(i), F(i)), g.get(FBar(i)).compose(&p).scale(&int(-1)));
                push(format!("h brackets: [h_i, ebar_i]: i={i} λ={l:?}"), anti(&mut g, HBar(i), EBar(i)), g.get(E(i)).compose(&p));
                push(format!("h brackets: [h_i, fbar_i]: i={i} λ={l:?}"), anti(&mut g, HBar(i), FBar(i)), g.get(F(i)).compose(&p));
            }
            if i >= 2 {
                let k = i - 1;
                push(format!("h brackets: [h_i, e_i-1]: i={i} λ={l:?}"), comm(&mut g, HBar(i), E(k)), g.get(EBar(k)).compose(&p).scale(&int(-1)));
                push(format!("h brackets: [h_i, f_i-1]: i={i} λ={l:?}"), comm(&mut g, HBar(i), F(k)), g.get(FBar(k)).compose(&p));
                push(format!("h brackets: [h_i, ebar_i-1]: i={i} λ={l:?}"), anti(&mut g, HBar(i), EBar(k)), g.get(E(k)).compose(&p));
                push(format!("h brackets: [h_i, fbar_i-1]: i={i} λ={l:?}"), anti(&mut g, HBar(i), FBar(k)), g.get(F(k)).compose(&p));
            }
            for j in 1..n {
                if i != j && i != j + 1 {
                    push(format!("h brackets: [h_i, e_j]: i={i} j={j} λ={l:?}"), comm(&mut g, HBar(i), E(j)), zero.clone());
                    push(format!("h brackets: [h_i, f_j]: i={i} j={j} λ={l:?}"), comm(&mut g, HBar(i), F(j)), zero.clone());
                    push(format!("h brackets: [h_i, ebar_j]: i={i} j={j} λ={l:?}"), anti(&mut g, HBar(i), EBar(j)), zero.clone());
                    push(format!("h brackets: [h_i, fbar_j]: i={i} j={j} λ={l:?}"), anti(&mut g, HBar(i), FBar(j)), zero.clone());
                }
            }
        }
    }

    // brackets between raising and lowering
    for l in &weights {
        let p = g.one(l);
        for i in 1..n {
            for j in 1..n {
                let d = i == j;
                let lhs = g.prod(&[E(i), F(j)]).sub(&g.prod(&[F(j), E(i)])).compose(&p);
                let rhs = if d { p.scale(&int(l.parts[i - 1] as i64 - l.parts[i] as i64)) } else { zero.clone() };
                push(format!("e-f brackets: [e_i, f_j]: i={i} j={j} λ={l:?}"), lhs, rhs);
                let lhs = g.prod(&[EBar(i), FBar(j)]).add(&g.prod(&[FBar(j), EBar(i)])).compose(&p);
                let rhs = if d { p.scale(&int((l.parts[i - 1] + l.parts[i]) as i64)) } else { zero.clone() };
                push(format!("e-f brackets: [ebar_i, fbar_j]: i={i} j={j} λ={l:?}"), lhs, rhs);
                let hdiff = if d { g.get(HBar(i)).sub(&g.get(HBar(i + 1))).compose(&p) } else { zero.clone() };
                let lhs = g.prod(&[E(i), FBar(j)]).sub(&g.prod(&[FBar(j), E(i)])).compose(&p);
                push(format!("e-f brackets: [e_i, fbar_j]: i={i} j={j} λ={l:?}"), lhs, hdiff.clone());
                let lhs = g.prod(&[EBar(i), F(j)]).sub(&g.prod(&[F(j), EBar(i)])).compose(&p);
                push(format!("e-f brackets: [ebar_i, f_j]: i={i} j={j} λ={l:?}"), lhs, hdiff);
            }
        }
    }

    // raising with raising, lowering with lowering
    for l in &weights {
        let p = g.one(l);
        let comm = |g: &mut Gens, a: SchurGen, b: SchurGen| g.prod(&[a.clone(), b.clone()]).sub(&g.prod(&[b, a])).compose(&p);
        let anti = |g: &mut Gens, a: SchurGen, b: SchurGen| g.prod(&[a.clone(), b.clone()]).add(&g.prod(&[b, a])).compose(&p);
        for i in 1..n {
            push(format!("e-e and f-f relations: ebar squared: i={i} λ={l:?}"), g.prod(&[EBar(i), EBar(i)]).compose(&p), zero.clone());
            push(format!("e-e and f-f relations: fbar squared: i={i} λ={l:?}"), g.prod(&[FBar(i), FBar(i)]).compose(&p), zero.clone());
            for j in 1..n {
                if i != j + 1 && j != i + 1 {
                    push(format!("e-e and f-f relations: [e_i, ebar_j]: i={i} j={j} λ={l:?}"), comm(&mut g, E(i), EBar(j)), zero.clone());
                    push(format!("e-e and f-f relations: [f_i, fbar_j]: i={i} j={j} λ={l:?}"), comm(&mut g, F(i), FBar(j)), zero.clone());
                }
                if i.abs_diff(j) > 1 {
                    push(format!("e-e and f-f relations: [e_i, e_j]: i={i} j={j} λ={l:?}"), comm(&mut g, E(i), E(j)), zero.clone());
                    push(format!("e-e and f-f relations: [f_i, f_j]: i={i} j={j} λ={l:?}"), comm(&mut g, F(i), F(j)), zero.clone());
                    push(format!("e-e and f-f relations: [ebar_i, ebar_j]: i={i} j={j} λ={l:?}"), anti(&mut g, EBar(i), EBar(j)), zero.clone());
                    push(format!("e-e and f-f relations: [fbar_i, fbar_j]: i={i} j={j} λ={l:?}"), anti(&mut g, FBar(i), FBar(j)), zero.clone());
                }
            }
            if i + 1 < n {
                let k = i + 1;
                push(format!("e-e and f-f relations: e_i e_i+1: i={i} λ={l:?}"), comm(&mut g, E(i), E(k)), anti(&mut g, EBar(i), EBar(k)));
                push(format!("e-e and f-f relations: e_i ebar_i+1: i={i} λ={l:?}"), comm(&mut g, E(i), EBar(k)), comm(&mut g, EBar(i), E(k)));
                push(format!("e-e and f-f relations: f_i+1 f_i: i={i} λ={l:?}"), comm(&mut g, F(k), F(i)), anti(&mut g, FBar(k), FBar(i)));
                push(format!("e-e and f-f relations: fbar_i+1 f_i: i={i} λ={l:?}"), comm(&mut g, FBar(k), F(i)), comm(&mut g, F(k), FBar(i)));
            }
        }
    }

    // Serre relations
    for l in &weights {
        let p = g.one(l);
        for i in 1..n {
            for j in 1..n {
                if i.abs_diff(j) != 1 {
                    continue;
                }
                let half = GaussianRational::ratio(1, 2);
                for (a, b, name) in [(E(i), E(j), "e e_j"), (F(i), F(j), "f f_j"), (E(i), EBar(j), "e ebar_j"), (F(i), FBar(j), "f fbar_j")] {
                    let a2 = g.prod(&[a.clone(), a.clone()]).scale(&half);
                    let gb = g.get(b.clone());
                    let lhs = a2
                        .compose(&gb)
                        .sub(&g.prod(&[a.clone(), b.clone(), a.clone()]))
                        .add(&gb.compose(&a2))
                        .compose(&p);
                    push(format!("serre: {name}: i={i} j={j} λ={l:?}"), lhs, zero.clone());
                }
            }
        }
    }

    // supercommutation with H_c(r)
    let mut schur_gens: Vec<SchurGen> = Vec::new();
    for i in 1..n {
        schur_gens.extend([E(i), F(i), EBar(i), FBar(i)]);
    }
    schur_gens.extend((1..=n).map(HBar));
    let mut h_gens: Vec<HGen> = (1..r).map(HGen::S).collect();
    h_gens.extend((1..=r).map(HGen::C));
    for x in &schur_gens {
        let gx = g.get(x.clone());
        for &h in &h_gens {
            let hm = EndoMatrix::h_generator(h, n, r)?;
            let sign = if x.is_odd() && matches!(h, HGen::C(_)) { -1 } else { 1 };
            push(format!("supercommute with H: {x} {h:?}"), gx.compose(&hm), hm.compose(&gx).scale(&int(sign)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(ix: &[(usize, bool)]) -> TensorMonomial {
        TensorMonomial::new(ix).unwrap()
    }

    #[test]
    fn divided_power_example() {
        let w = SchurWord::new(vec![(SchurGen::E(1), 2)]).unwrap();
        let m = schur_word_matrix(&w, 2, 2).unwrap();
        let img = m.column(&mono(&[(2, false), (2, false)]));
        assert_eq!(img.len(), 1);
        assert_eq!(img.get(&mono(&[(1, false), (1, false)])), Some(&GaussianRational::one()));
    }

    #[test]
    fn projection_word() {
        let l = Composition::from(&[1, 1][..]);
        let m = schur_word_matrix(&SchurWord::gen(SchurGen::One(l.clone())), 2, 2).unwrap();
        for mn in TensorMonomial::all(2, 2) {
            let img = m.column(&mn);
            assert_eq!(img.is_empty(), mn.weight(2) != l);
        }
    }

    #[test]
    fn h_bar_square_is_weight() {
        let h = EndoMatrix::generator(&SchurGen::HBar(1), 2, 2).unwrap();
        let sq = h.compose(&h);
        for l in enumerate_compositions(2, 2, CompositionMode::All) {
            let p = EndoMatrix::generator(&SchurGen::One(l.clone()), 2, 2).unwrap();
            assert_eq!(sq.compose(&p), p.scale(&GaussianRational::from_int(l.parts[0] as i64)));
        }
    }

    #[test]
    fn presentation_holds_at_2_2() {
        let rep = verify_schur_relations(2, 2).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures());
        assert!(rep.checks.len() > 50);
    }

    #[test]
    fn bad_exponent_rejected() {
        assert!(SchurWord::new(vec![(SchurGen::HBar(1), 2)]).is_err());
    }
}
