//! The evaluation functor from webs to `H_c(r)`-module maps between
//! permutation supermodules, on supertabloid bases.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use crate::combinat::{enumerate_compositions, subsets, Composition, CompositionMode};
use crate::error::{Error, Result};
use crate::permod::{act_c_basis, act_s_basis, add_term, ModuleVector, SchurGen, SparseVec, TensorMonomial};
use crate::scalar::{GaussianRational, Parity};
use crate::schurq::{schur_word_matrix, EndoMatrix, RelationCheck, SchurReport, SchurWord};
use crate::tabloid::{omega_basis, OmegaTabloid};
use crate::web::{Layer, WebBuilder, WebCombination, WebExpr, WebStack};

/// The sorted supertabloid basis of `M^λ` with an index lookup.
#[derive(Debug)]
pub struct ModuleBasis {
    pub shape: Composition,
    pub tabloids: Vec<OmegaTabloid>,
    index: FxHashMap<OmegaTabloid, usize>,
}

impl ModuleBasis {
    pub fn len(&self) -> usize {
        self.tabloids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tabloids.is_empty()
    }

    pub fn index_of(&self, t: &OmegaTabloid) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Cached basis for `M^λ`; `λ` should have positive parts.
pub fn module_basis(lambda: &Composition) -> Result<Arc<ModuleBasis>> {
    static CACHE: OnceLock<Mutex<FxHashMap<Composition, Arc<ModuleBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("cache lock").get(lambda) {
        return Ok(b.clone());
    }
    let tabloids = omega_basis(lambda)?;
    let index = tabloids.iter().enumerate().map(|(k, t)| (*t, k)).collect();
    let b = Arc::new(ModuleBasis { shape: lambda.clone(), tabloids, index });
    cache.lock().expect("cache lock").insert(lambda.clone(), b.clone());
    Ok(b)
}

type IntVec = SparseVec<OmegaTabloid>;

/// Calls `emit(sign_negative, tabloid)` for each term of `layer(t)`.
#[inline]
fn layer_on_tabloid(layer: &Layer, t: &OmegaTabloid, mut emit: impl FnMut(bool, OmegaTabloid)) {
    match *layer {
        Layer::Merge(i) => {
            let n = t.nrows() - 1;
            emit(false, t.remap_rows(n, |x| if x >= i { x - 1 } else { x }));
        }
        Layer::Split(i, k, _) => {
            let row = i - 1;
            let letters: Vec<usize> = t.row_letters0(row).collect();
            let shifted = t.remap_rows(t.nrows() + 1, |x| if x > row { x + 1 } else { x });
            // letters outside the chosen subset move to the new row `row + 1`
            for s in subsets(letters.len(), k) {
                let mut u = shifted;
                let mut mask = 0u32;
                for &p in &s {
                    mask |= 1 << p;
                }
                for (p, &h) in letters.iter().enumerate() {
                    if mask >> p & 1 == 0 {
                        u = u.with_row0(h, row + 1);
                    }
                }
                emit(false, u);
            }
        }
        Layer::Dot(j) => {
            for h in t.row_letters0(j - 1) {
                emit(t.parity_before0(h), t.toggled0(h));
            }
        }
    }
}

fn add_signed(v: &mut IntVec, t: OmegaTabloid, c: &GaussianRational, neg: bool) {
    add_term(v, t, c.clone().signed(neg));
}

/// Applies one layer to a vector of `M^λ` (`λ` the layer's source).
pub fn eval_layer(layer: &Layer, v: &ModuleVector) -> Result<ModuleVector> {
    let target = layer.target(&v.shape)?;
    let mut out = ModuleVector::zero(target);
    for (t, c) in &v.terms {
        if t.shape() != v.shape {
            return Err(Error::SizeMismatch(format!("{t} does not have shape {:?}", v.shape)));
        }
        layer_on_tabloid(layer, t, |neg, u| add_signed(&mut out.terms, u, c, neg));
    }
    Ok(out)
}

/// `w(t)` for a single web with signed integer coefficients.
fn expr_on_tabloid(w: &WebExpr, t: &OmegaTabloid) -> FxHashMap<OmegaTabloid, i64> {
    let mut cur: FxHashMap<OmegaTabloid, i64> = FxHashMap::default();
    cur.insert(*t, 1);
    for layer in w.layers() {
        let mut next: FxHashMap<OmegaTabloid, i64> = FxHashMap::default();
        for (u, c) in &cur {
            layer_on_tabloid(layer, u, |neg, x| {
                *next.entry(x).or_insert(0) += if neg { -c } else { *c };
            });
        }
        next.retain(|_, c| *c != 0);
        cur = next;
        if cur.is_empty() {
            break;
        }
    }
    cur
}

fn expr_on_vec(w: &WebExpr, v: &IntVec, scale: &GaussianRational, out: &mut IntVec) {
    for (t, c) in v {
        let coeff = c * scale;
        for (u, n) in expr_on_tabloid(w, t) {
            add_term(out, u, &coeff * &GaussianRational::from_int(n));
        }
    }
}

fn combination_on_vec(w: &WebCombination, v: &IntVec) -> IntVec {
    let mut out = IntVec::default();
    for (c, e) in w.terms() {
        expr_on_vec(e, v, c, &mut out);
    }
    out
}

/// A homogeneous-or-not `H`-map `M^λ → M^μ`, stored by columns.
#[derive(Clone)]
pub struct MorphismMatrix {
    domain: Arc<ModuleBasis>,
    codomain: Arc<ModuleBasis>,
    cols: Vec<IntVec>,
}

impl MorphismMatrix {
    pub fn zero(domain: &Composition, codomain: &Composition) -> Result<Self> {
        let d = module_basis(domain)?;
        let c = module_basis(codomain)?;
        let cols = vec![IntVec::default(); d.len()];
        Ok(Self { domain: d, codomain: c, cols })
    }

    pub fn identity(obj: &Composition) -> Result<Self> {
        let mut m = Self::zero(obj, obj)?;
        for (k, t) in m.domain.tabloids.clone().iter().enumerate() {
            m.cols[k].insert(*t, GaussianRational::one());
        }
        Ok(m)
    }

    /// Builds a matrix from images of the domain basis.
    pub fn from_columns(domain: &Composition, codomain: &Composition, f: impl Fn(&OmegaTabloid) -> IntVec) -> Result<Self> {
        let mut m = Self::zero(domain, codomain)?;
        for (k, t) in m.domain.tabloids.iter().enumerate() {
            m.cols[k] = f(t);
        }
        Ok(m)
    }

    pub fn domain(&self) -> &Composition {
        &self.domain.shape
    }

    pub fn codomain(&self) -> &Composition {
        &self.codomain.shape
    }

    pub fn domain_basis(&self) -> &ModuleBasis {
        &self.domain
    }

    pub fn codomain_basis(&self) -> &ModuleBasis {
        &self.codomain
    }

    /// Image of the `k`-th domain basis tabloid.
    pub fn column(&self, k: usize) -> &SparseVec<OmegaTabloid> {
        &self.cols[k]
    }

    pub fn image(&self, t: &OmegaTabloid) -> Option<&SparseVec<OmegaTabloid>> {
        self.domain.index_of(t).map(|k| &self.cols[k])
    }

    pub fn apply(&self, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero(self.codomain().clone());
        for (t, c) in &v.terms {
            let col = self.image(t).ok_or_else(|| Error::SizeMismatch(format!("{t} not in the domain basis")))?;
            for (u, x) in col {
                out.add_term(*u, c * x);
            }
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.codomain() != self.domain() {
            return Err(Error::SizeMismatch(format!("{:?} vs {:?}", other.codomain(), self.domain())));
        }
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut out = IntVec::default();
                for (t, c) in col {
                    let k = self.domain.index_of(t).expect("basis tabloid");
                    for (u, x) in &self.cols[k] {
                        add_term(&mut out, *u, c * x);
                    }
                }
                out
            })
            .collect();
        Ok(Self { domain: other.domain.clone(), codomain: self.codomain.clone(), cols })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, col) in other.cols.iter().enumerate() {
            for (t, c) in col {
                add_term(&mut out.cols[k], *t, c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&GaussianRational::from_int(-1)))
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = self.clone();
        for col in &mut out.cols {
            if s.is_zero() {
                col.clear();
            } else {
                for c in col.values_mut() {
                    *c = &*c * s;
                }
            }
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.domain() != other.domain() || self.codomain() != other.codomain() {
            return Err(Error::SizeMismatch(format!(
                "{:?}->{:?} vs {:?}->{:?}",
                self.domain(),
                self.codomain(),
                other.domain(),
                other.codomain()
            )));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// The parity if every nonzero entry shifts tabloid parity the same way;
    /// `None` for mixed maps. The zero map counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (k, col) in self.cols.iter().enumerate() {
            let p = self.domain.tabloids[k].parity();
            for t in col.keys() {
                let q = t.parity() + p;
                match found {
                    None => found = Some(q),
                    Some(f) if f != q => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    /// Whether all entries are Gaussian integers.
    pub fn is_integral(&self) -> bool {
        self.cols.iter().flat_map(|c| c.values()).all(|x| x.is_gaussian_integer())
    }

    /// Sorted `(row, col, value)` triplets; rows index the codomain basis.
    pub fn triplets(&self) -> Vec<(usize, usize, GaussianRational)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (k, col) in self.cols.iter().enumerate() {
            for (t, c) in col {
                out.push((self.codomain.index_of(t).expect("basis tabloid"), k, c.clone()));
            }
        }
        out.sort_by_key(|e| (e.1, e.0));
        out
    }

    /// Rebuilds a matrix from triplets.
    pub fn from_triplets(
        domain: &Composition,
        codomain: &Composition,
        entries: &[(usize, usize, GaussianRational)],
    ) -> Result<Self> {
        let mut m = Self::zero(domain, codomain)?;
        for (row, col, c) in entries {
            let max = m.codomain.len();
            let t = *m.codomain.tabloids.get(*row).ok_or(Error::IndexOutOfRange { index: *row, max })?;
            let cc = m.cols.len();
            let slot = m.cols.get_mut(*col).ok_or(Error::IndexOutOfRange { index: *col, max: cc })?;
            add_term(slot, t, c.clone());
        }
        Ok(m)
    }

    /// The matrix flattened to `(row·|domain| + col, value)` pairs.
    pub fn flattened(&self) -> Vec<(usize, GaussianRational)> {
        let n = self.domain.len();
        self.triplets().into_iter().map(|(r, c, x)| (r * n + c, x)).collect()
    }
}

impl PartialEq for MorphismMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.domain() == other.domain()
            && self.codomain() == other.codomain()
            && self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl fmt::Debug for MorphismMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MorphismMatrix ({}) -> ({})", self.domain(), self.codomain())?;
        for (k, col) in self.cols.iter().enumerate() {
            if col.is_empty() {
                continue;
            }
            let v = ModuleVector { shape: self.codomain().clone(), terms: col.clone() };
            writeln!(f, "  {} -> {}", self.domain.tabloids[k], v)?;
        }
        Ok(())
    }
}

/// `ψ(w)` for a single web.
pub fn eval_expr(w: &WebExpr) -> Result<MorphismMatrix> {
    MorphismMatrix::from_columns(w.domain(), w.codomain(), |t| {
        expr_on_tabloid(w, t).into_iter().map(|(u, n)| (u, GaussianRational::from_int(n))).collect()
    })
}

/// `ψ` of a linear combination of webs.
pub fn eval_combination(w: &WebCombination) -> Result<MorphismMatrix> {
    MorphismMatrix::from_columns(w.domain(), w.codomain(), |t| {
        let mut v = IntVec::default();
        v.insert(*t, GaussianRational::one());
        combination_on_vec(w, &v)
    })
}

/// `ψ` of a product of combinations, evaluated factor by factor.
pub fn eval_stack(s: &WebStack) -> Result<MorphismMatrix> {
    MorphismMatrix::from_columns(s.domain(), s.codomain(), |t| {
        let mut v = IntVec::default();
        v.insert(*t, GaussianRational::one());
        for f in s.factors() {
            v = combination_on_vec(f, &v);
            if v.is_empty() {
                break;
            }
        }
        v
    })
}

/// Applies a product of combinations to one vector.
pub fn apply_stack(s: &WebStack, v: &ModuleVector) -> Result<ModuleVector> {
    if &v.shape != s.domain() {
        return Err(Error::SizeMismatch(format!("{:?} vs {:?}", v.shape, s.domain())));
    }
    let mut cur = v.terms.clone();
    for f in s.factors() {
        cur = combination_on_vec(f, &cur);
    }
    Ok(ModuleVector { shape: s.codomain().clone(), terms: cur })
}

/// `ψ` of a sum of scaled products with a common boundary.
pub fn eval_stacks(domain: &Composition, codomain: &Composition, terms: &[(GaussianRational, WebStack)]) -> Result<MorphismMatrix> {
    let mut m = MorphismMatrix::zero(domain, codomain)?;
    for (c, s) in terms {
        m = m.add(&eval_stack(s)?.scale(c))?;
    }
    Ok(m)
}

/// A failed equivariance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceWitness {
    pub generator: String,
    pub tabloid: String,
}

impl fmt::Display for EquivarianceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fails for {} on {}", self.generator, self.tabloid)
    }
}

fn act_s_vec(i: usize, v: &IntVec) -> IntVec {
    let mut out = IntVec::default();
    for (t, c) in v {
        let (neg, u) = act_s_basis(i, t);
        add_signed(&mut out, u, c, neg);
    }
    out
}

fn act_c_vec(j: usize, v: &IntVec) -> IntVec {
    let mut out = IntVec::default();
    for (t, c) in v {
        let (neg, u) = act_c_basis(j, t);
        add_signed(&mut out, u, &c.mul_i(), neg);
    }
    out
}

/// Checks `M(h·v) = (−1)^{|M||h|} h·M(v)` for the generators `s_i`, `c_j` and
/// every basis tabloid `v`. Maps of mixed parity fail.
pub fn check_equivariance(m: &MorphismMatrix) -> std::result::Result<(), EquivarianceWitness> {
    let odd = match m.parity() {
        Some(p) => p.is_odd(),
        None => {
            return Err(EquivarianceWitness { generator: "parity".into(), tabloid: "mixed parity".into() });
        }
    };
    let r = m.domain().total();
    let apply = |v: &IntVec| -> IntVec {
        let mut out = IntVec::default();
        for (t, c) in v {
            for (u, x) in m.image(t).expect("basis tabloid") {
                add_term(&mut out, *u, c * x);
            }
        }
        out
    };
    for t in &m.domain.tabloids {
        let mut v = IntVec::default();
        v.insert(*t, GaussianRational::one());
        let fv = m.image(t).expect("basis tabloid");
        for i in 0..r.saturating_sub(1) {
            if apply(&act_s_vec(i, &v)) != act_s_vec(i, fv) {
                return Err(EquivarianceWitness { generator: format!("s{}", i + 1), tabloid: t.to_string() });
            }
        }
        for j in 0..r {
            let lhs = apply(&act_c_vec(j, &v));
            let mut rhs = act_c_vec(j, fv);
            if odd {
                for c in rhs.values_mut() {
                    *c = -c.clone();
                }
            }
            if lhs != rhs {
                return Err(EquivarianceWitness { generator: format!("c{}", j + 1), tabloid: t.to_string() });
            }
        }
    }
    Ok(())
}

/// `π^r` of a generator `x·1_λ` (`λ ∈ Λ(n, r)`), as a web on the nonzero
/// labels. `None` means the image is zero.
pub fn pi_generator(g: &SchurGen, lambda: &Composition) -> Result<Option<WebExpr>> {
    let labels: Vec<i64> = lambda.parts.iter().map(|&x| x as i64).collect();
    let n = labels.len();
    let check = |i: usize, max: usize| {
        if i == 0 || i > max {
            Err(Error::IndexOutOfRange { index: i, max })
        } else {
            Ok(())
        }
    };
    let b = WebBuilder::new(&labels);
    let b = match *g {
        SchurGen::One(ref l) => {
            if l != lambda {
                return Ok(None);
            }
            b
        }
        SchurGen::E(i) => {
            check(i, n - 1)?;
            b.rung_left(i, 1, false)
        }
        SchurGen::EBar(i) => {
            check(i, n - 1)?;
            b.rung_left(i, 1, true)
        }
        SchurGen::F(i) => {
            check(i, n - 1)?;
            b.rung_right(i, 1, false)
        }
        SchurGen::FBar(i) => {
            check(i, n - 1)?;
            b.rung_right(i, 1, true)
        }
        SchurGen::HBar(j) => {
            check(j, n)?;
            b.dot(j)
        }
    };
    Ok(b.finish())
}

/// The merge web `merge_i` on `a` as the image of
/// `e_{r−1}^{(â_r)} ⋯ e_i^{(â_{i+1})} 1_â`, built from divided-power rungs.
pub fn pi_merge_word(a: &Composition, i: usize) -> Result<Option<WebExpr>> {
    let hat = a.hat()?;
    let r = hat.len();
    let mut b = WebBuilder::new(&hat.parts.iter().map(|&x| x as i64).collect::<Vec<_>>());
    // rightmost factor acts first
    for p in i..r {
        let amount = hat.parts[p];
        b = b.rung_left(p, amount as i64, false);
    }
    Ok(b.finish())
}

/// The split web `split_i^{k,l}` on the target `a` (so `a_i = k`, `a_{i+1} = l`)
/// as the image of `f_i^{(â_{i+1})} ⋯ f_{r−1}^{(â_r)} 1_ŝ`, where `ŝ` is the source.
pub fn pi_split_word(a: &Composition, i: usize) -> Result<Option<WebExpr>> {
    let hat = a.hat()?;
    let r = hat.len();
    if i == 0 || i >= a.len() {
        return Err(Error::IndexOutOfRange { index: i, max: a.len().saturating_sub(1) });
    }
    let mut src = a.parts.clone();
    let l = src.remove(i);
    src[i - 1] += l;
    let src = Composition::new(src).hat()?;
    let mut b = WebBuilder::new(&src.parts.iter().map(|&x| x as i64).collect::<Vec<_>>());
    for p in (i..r).rev() {
        b = b.rung_right(p, hat.parts[p] as i64, false);
    }
    Ok(b.finish())
}

/// The block of a `V^{⊗r}` endomorphism from weight `λ` to weight `μ`
/// (`n = r` letters), as a map `M^{λ̄} → M^{μ̄}` where the bar drops zero parts.
/// Only meaningful when both weights have all zeros trailing.
pub fn restrict_endo(m: &EndoMatrix, lambda: &Composition, mu: &Composition) -> Result<MorphismMatrix> {
    let n = lambda.len();
    let dom = lambda.strip_zeros();
    let cod = mu.strip_zeros();
    if !lambda.has_trailing_zeros_only() || !mu.has_trailing_zeros_only() {
        return Err(Error::InvalidComposition("weights must have trailing zeros only".into()));
    }
    MorphismMatrix::from_columns(&dom, &cod, |t| {
        let mono = TensorMonomial::from_tabloid(&t.remap_rows(n, |x| x));
        let mut out = IntVec::default();
        for (u, c) in m.column(&mono) {
            if u.weight(n) == *mu {
                let tab = u.to_tabloid(n).expect("valid").remap_rows(cod.len(), |x| x);
                add_term(&mut out, tab, c);
            }
        }
        out
    })
}

/// Compares `ψ(π^r(x))` with the Schur matrix of `x` on `M^λ` blocks for every
/// generator and every `λ ∈ Λ(r, r)` where both weights have trailing zeros
/// only, plus the divided-power merge and split words.
pub fn verify_pi_triangle(r: usize) -> Result<SchurReport> {
    let mut report = SchurReport::default();
    let mut gens = Vec::new();
    for i in 1..r {
        gens.extend([SchurGen::E(i), SchurGen::F(i), SchurGen::EBar(i), SchurGen::FBar(i)]);
    }
    for j in 1..=r {
        gens.push(SchurGen::HBar(j));
    }
    let mut mats: FxHashMap<SchurGen, EndoMatrix> = FxHashMap::default();
    for lambda in enumerate_compositions(r, r, CompositionMode::All) {
        let mut all = gens.clone();
        all.push(SchurGen::One(lambda.clone()));
        for g in all {
            let target = weight_after(&g, &lambda);
            let web = pi_generator(&g, &lambda)?;
            let name = format!("pi-generator: {g} on ({lambda})");
            let Some(mu) = target else {
                report.checks.push(RelationCheck { name, passed: web.is_none() });
                continue;
            };
            if !lambda.has_trailing_zeros_only() || !mu.has_trailing_zeros_only() {
                continue;
            }
            let phi = mats.entry(g.clone()).or_insert_with(|| EndoMatrix::generator(&g, r, r).expect("generator"));
            let lhs = restrict_endo(phi, &lambda, &mu)?;
            let rhs = match web {
                Some(w) => eval_expr(&w)?,
                None => MorphismMatrix::zero(&lambda.strip_zeros(), &mu.strip_zeros())?,
            };
            report.checks.push(RelationCheck { name, passed: lhs == rhs });
        }
    }
    for a in enumerate_compositions(r, r, CompositionMode::Strict) {
        let hat = a.hat()?;
        for i in 1..a.len() {
            let merged = Layer::Merge(i).target(&a)?;
            let word: Vec<(SchurGen, usize)> =
                (i..r).rev().filter(|&p| hat.parts[p] > 0).map(|p| (SchurGen::E(p), hat.parts[p])).collect();
            let phi = schur_word_matrix(&SchurWord::new(word)?, r, r)?;
            let direct = eval_expr(&WebExpr::new(a.clone(), vec![Layer::Merge(i)])?)?;
            let via_pi = pi_merge_word(&a, i)?.map(|w| eval_expr(&w)).transpose()?;
            let ok = via_pi.as_ref() == Some(&direct) && restrict_endo(&phi, &hat, &merged.hat()?)? == direct;
            report.checks.push(RelationCheck { name: format!("pi-merge: merge@{i} on ({a})"), passed: ok });

            let (k, l) = (a.parts[i - 1], a.parts[i]);
            let src = merged;
            let word: Vec<(SchurGen, usize)> =
                (i..r).filter(|&p| hat.parts[p] > 0).map(|p| (SchurGen::F(p), hat.parts[p])).collect();
            let phi = schur_word_matrix(&SchurWord::new(word)?, r, r)?;
            let direct = eval_expr(&WebExpr::new(src.clone(), vec![Layer::Split(i, k, l)])?)?;
            let via_pi = pi_split_word(&a, i)?.map(|w| eval_expr(&w)).transpose()?;
            let ok = via_pi.as_ref() == Some(&direct) && restrict_endo(&phi, &src.hat()?, &hat)? == direct;
            report.checks.push(RelationCheck { name: format!("pi-split: split@{i}({k},{l}) on ({src})"), passed: ok });
        }
    }
    Ok(report)
}

fn weight_after(g: &SchurGen, lambda: &Composition) -> Option<Composition> {
    let mut p: Vec<i64> = lambda.parts.iter().map(|&x| x as i64).collect();
    match *g {
        SchurGen::E(i) | SchurGen::EBar(i) => {
            p[i - 1] += 1;
            p[i] -= 1;
        }
        SchurGen::F(i) | SchurGen::FBar(i) => {
            p[i - 1] -= 1;
            p[i] += 1;
        }
        SchurGen::HBar(_) | SchurGen::One(_) => {}
    }
    p.iter().all(|&x| x >= 0).then(|| Composition::new(p.into_iter().map(|x| x as usize).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sergeev::{standard_basis, SergeevElement};
    use crate::tabloid::Supertabloid;
    use crate::web::{expand_clasp, expand_crossing, xi};

    fn c(p: &[usize]) -> Composition {
        Composition::from(p)
    }

    fn tab(s: &str) -> OmegaTabloid {
        OmegaTabloid::from_supertabloid(&s.parse::<Supertabloid>().unwrap()).unwrap()
    }

    fn gi(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn dot_on_sample_tabloid() {
        let v = eval_layer(&Layer::Dot(3), &ModuleVector::basis(tab("[3',6'],[2],[1,4',5]"))).unwrap();
        let mut e = ModuleVector::zero(c(&[2, 1, 3]));
        e.add_term(tab("[3',6'],[2],[1',4',5]"), gi(1));
        e.add_term(tab("[3',6'],[2],[1,4,5]"), gi(-1));
        e.add_term(tab("[3',6'],[2],[1,4',5']"), gi(1));
        assert_eq!(v, e);
    }

    #[test]
    fn merge_on_sample_tabloid() {
        let v = eval_layer(&Layer::Merge(1), &ModuleVector::basis(tab("[3',6'],[2],[1,4',5]"))).unwrap();
        assert_eq!(v, ModuleVector::basis(tab("[2,3',6'],[1,4',5]")));
    }

    #[test]
    fn split_on_sample_tabloid() {
        let v = eval_layer(&Layer::Split(3, 2, 1), &ModuleVector::basis(tab("[3',6'],[2],[1,4',5]"))).unwrap();
        let mut e = ModuleVector::zero(c(&[2, 1, 2, 1]));
        for s in ["[3',6'],[2],[1,4'],[5]", "[3',6'],[2],[1,5],[4']", "[3',6'],[2],[4',5],[1]"] {
            e.add_term(tab(s), gi(1));
        }
        assert_eq!(v, e);
    }

    #[test]
    fn digon_is_binomial() {
        for (k, l, b) in [(1, 1, 2), (1, 2, 3), (2, 2, 6)] {
            let w = WebExpr::new(c(&[k + l]), vec![Layer::Split(1, k, l), Layer::Merge(1)]).unwrap();
            let m = eval_expr(&w).unwrap();
            assert_eq!(m, MorphismMatrix::identity(&c(&[k + l])).unwrap().scale(&gi(b)));
        }
    }

    #[test]
    fn crossing_swaps_rows() {
        let m = eval_combination(&expand_crossing(&c(&[1, 1]), 1).unwrap()).unwrap();
        for t in omega_basis(&c(&[1, 1])).unwrap() {
            let img = m.image(&t).unwrap();
            assert_eq!(img.len(), 1);
            let swapped = t.remap_rows(2, |x| 1 - x);
            assert_eq!(img.get(&swapped), Some(&gi(1)));
        }
    }

    #[test]
    fn dot_is_odd_equivariant() {
        let w = WebExpr::new(c(&[1]), vec![Layer::Dot(1)]).unwrap();
        let m = eval_expr(&w).unwrap();
        assert_eq!(m.parity(), Some(Parity::Odd));
        assert!(check_equivariance(&m).is_ok());
        // the same matrix claimed even fails
        let bad = m.add(&MorphismMatrix::identity(&c(&[1])).unwrap()).unwrap();
        assert!(check_equivariance(&bad).is_err());
    }

    #[test]
    fn generators_are_equivariant() {
        let webs = [
            WebExpr::new(c(&[2, 1]), vec![Layer::Merge(1)]).unwrap(),
            WebExpr::new(c(&[3]), vec![Layer::Split(1, 1, 2)]).unwrap(),
            WebExpr::new(c(&[1, 2]), vec![Layer::Dot(2)]).unwrap(),
            WebExpr::new(c(&[2, 2]), vec![Layer::Dot(1), Layer::Merge(1), Layer::Split(1, 3, 1), Layer::Dot(2)]).unwrap(),
        ];
        for w in webs {
            let m = eval_expr(&w).unwrap();
            assert_eq!(m.parity(), Some(w.parity()));
            assert!(check_equivariance(&m).is_ok(), "{w}");
        }
    }

    #[test]
    fn psi_xi_on_regular_module() {
        for r in 1..=3 {
            let obj = Composition::omega(r);
            let t0 = OmegaTabloid::from_parts(r, &(0..r as u8).collect::<Vec<_>>(), 0).unwrap();
            for i in 1..r {
                let m = eval_combination(&xi(&SergeevElement::s(r, i).unwrap()).unwrap()).unwrap();
                let img = m.image(&t0).unwrap();
                assert_eq!(img.len(), 1);
                assert_eq!(img.get(&t0.swapped0(i - 1)), Some(&gi(1)));
            }
            for j in 1..=r {
                let m = eval_combination(&xi(&SergeevElement::c(r, j).unwrap()).unwrap()).unwrap();
                assert_eq!(m.domain(), &obj);
                let img = m.image(&t0).unwrap();
                assert_eq!(img.get(&t0.toggled0(j - 1)), Some(&gi(1)));
            }
        }
    }

    #[test]
    fn xi_is_multiplicative() {
        for r in 1..=3 {
            let basis = standard_basis(r);
            let ev = |x: &SergeevElement| eval_combination(&xi(x).unwrap()).unwrap();
            for a in &basis {
                let ea = SergeevElement::from_word(a.clone());
                let ma = ev(&ea);
                for b in &basis {
                    let eb = SergeevElement::from_word(b.clone());
                    let lhs = ev(&ea.multiply(&eb).unwrap());
                    assert_eq!(lhs, ma.compose(&ev(&eb)).unwrap(), "{a} * {b}");
                }
            }
        }
    }

    #[test]
    fn clasp_two_is_symmetrizer() {
        let cl = eval_combination(&expand_clasp(&c(&[1, 1]), 1, 2).unwrap()).unwrap();
        let x = eval_combination(&expand_crossing(&c(&[1, 1]), 1).unwrap()).unwrap();
        let id = MorphismMatrix::identity(&c(&[1, 1])).unwrap();
        assert_eq!(cl, id.add(&x).unwrap().scale(&GaussianRational::ratio(1, 2)));
    }

    #[test]
    fn pi_triangle_small() {
        for r in 1..=3 {
            let rep = verify_pi_triangle(r).unwrap();
            let bad: Vec<_> = rep.failures().iter().map(|c| c.name.clone()).collect();
            assert!(bad.is_empty(), "{bad:?}");
        }
    }

    #[test]
    fn triplet_round_trip() {
        let w = WebExpr::new(c(&[2, 1]), vec![Layer::Dot(1), Layer::Merge(1), Layer::Split(1, 1, 2)]).unwrap();
        let m = eval_expr(&w).unwrap();
        let back = MorphismMatrix::from_triplets(m.domain(), m.codomain(), &m.triplets()).unwrap();
        assert_eq!(back, m);
        assert!(m.is_integral());
    }
}
