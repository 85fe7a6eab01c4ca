//! Webs: layered words in merges, splits and dots, read bottom to top, and
//! the derived constructions built from them.

use std::fmt;

use crate::combinat::{factorial, Composition, Permutation};
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Parity};
use crate::sergeev::{SergeevBasisWord, SergeevElement};
use crate::tabloid::Supertabloid;

/// One generator. Positions are 1-based strand indices of the layer's source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layer {
    /// Merge strands `i` and `i+1`.
    Merge(usize),
    /// Split strand `i` into a `k`-strand (left) and an `l`-strand (right).
    Split(usize, usize, usize),
    /// A dot on strand `j`.
    Dot(usize),
}

impl Layer {
    /// Target object of this layer on `src`.
    pub fn target(&self, src: &Composition) -> Result<Composition> {
        let m = src.len();
        let mut parts = src.parts.clone();
        match *self {
            Layer::Merge(i) => {
                if i == 0 || i >= m {
                    return Err(Error::InvalidWeb(format!("merge@{i} on {src:?}")));
                }
                let b = parts.remove(i);
                parts[i - 1] += b;
            }
            Layer::Split(i, k, l) => {
                if i == 0 || i > m || k == 0 || l == 0 || parts[i - 1] != k + l {
                    return Err(Error::InvalidWeb(format!("split@{i}({k},{l}) on {src:?}")));
                }
                parts[i - 1] = k;
                parts.insert(i, l);
            }
            Layer::Dot(j) => {
                if j == 0 || j > m {
                    return Err(Error::InvalidWeb(format!("dot@{j} on {src:?}")));
                }
            }
        }
        Ok(Composition::new(parts))
    }

    pub fn is_dot(&self) -> bool {
        matches!(self, Layer::Dot(_))
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Layer::Merge(i) => write!(f, "merge@{i}"),
            Layer::Split(i, k, l) => write!(f, "split@{i}({k},{l})"),
            Layer::Dot(j) => write!(f, "dot@{j}"),
        }
    }
}

/// A web: a domain object and a bottom-to-top sequence of layers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WebExpr {
    domain: Composition,
    codomain: Composition,
    layers: Vec<Layer>,
}

impl WebExpr {
    pub fn identity(obj: Composition) -> Result<Self> {
        if !obj.is_strict() {
            return Err(Error::InvalidWeb(format!("object {obj:?} must have positive parts")));
        }
        Ok(Self { codomain: obj.clone(), domain: obj, layers: Vec::new() })
    }

    pub fn new(domain: Composition, layers: Vec<Layer>) -> Result<Self> {
        let mut w = Self::identity(domain)?;
        for l in layers {
            w.push(l)?;
        }
        Ok(w)
    }

    /// Appends a layer on top.
    pub fn push(&mut self, l: Layer) -> Result<()> {
        self.codomain = l.target(&self.codomain)?;
        self.layers.push(l);
        Ok(())
    }

    pub fn with(mut self, l: Layer) -> Result<Self> {
        self.push(l)?;
        Ok(self)
    }

    pub fn domain(&self) -> &Composition {
        &self.domain
    }

    pub fn codomain(&self) -> &Composition {
        &self.codomain
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn rank(&self) -> usize {
        self.domain.total()
    }

    pub fn dots(&self) -> usize {
        self.layers.iter().filter(|l| l.is_dot()).count()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.dots())
    }

    /// Objects at every level, bottom first (`layers().len() + 1` entries).
    pub fn levels(&self) -> Vec<Composition> {
        let mut out = vec![self.domain.clone()];
        for l in &self.layers {
            let next = l.target(out.last().expect("nonempty")).expect("validated");
            out.push(next);
        }
        out
    }

    /// `self` stacked on top of `below`; `None` when the boundaries differ.
    pub fn over(&self, below: &Self) -> Option<Self> {
        if below.codomain != self.domain {
            return None;
        }
        let mut layers = below.layers.clone();
        layers.extend_from_slice(&self.layers);
        Some(Self { domain: below.domain.clone(), codomain: self.codomain.clone(), layers })
    }

    /// Adds identity strands `left` and `right` on either side.
    pub fn embed(&self, left: &[usize], right: &[usize]) -> Self {
        let pad = |c: &Composition| {
            let mut p = left.to_vec();
            p.extend_from_slice(&c.parts);
            p.extend_from_slice(right);
            Composition::new(p)
        };
        let s = left.len();
        let layers = self
            .layers
            .iter()
            .map(|l| match *l {
                Layer::Merge(i) => Layer::Merge(i + s),
                Layer::Split(i, k, l) => Layer::Split(i + s, k, l),
                Layer::Dot(j) => Layer::Dot(j + s),
            })
            .collect();
        Self { domain: pad(&self.domain), codomain: pad(&self.codomain), layers }
    }

    /// Reflection about a vertical axis.
    pub fn mirror(&self) -> Self {
        let rev = |c: &Composition| Composition::new(c.parts.iter().rev().copied().collect());
        let levels = self.levels();
        let layers = self
            .layers
            .iter()
            .zip(&levels)
            .map(|(l, src)| {
                let m = src.len();
                match *l {
                    Layer::Merge(i) => Layer::Merge(m - i),
                    Layer::Split(i, k, l) => Layer::Split(m + 1 - i, l, k),
                    Layer::Dot(j) => Layer::Dot(m + 1 - j),
                }
            })
            .collect();
        Self { domain: rev(&self.domain), codomain: rev(&self.codomain), layers }
    }

    /// Reflection about a horizontal axis: the word is reversed and merges
    /// and splits trade places.
    pub fn flip(&self) -> Self {
        let levels = self.levels();
        let layers = self
            .layers
            .iter()
            .enumerate()
            .rev()
            .map(|(k, l)| {
                let src = &levels[k];
                match *l {
                    Layer::Merge(i) => Layer::Split(i, src.parts[i - 1], src.parts[i]),
                    Layer::Split(i, _, _) => Layer::Merge(i),
                    Layer::Dot(j) => Layer::Dot(j),
                }
            })
            .collect();
        Self { domain: self.codomain.clone(), codomain: self.domain.clone(), layers }
    }

    /// Script text: `object ...` followed by one layer per line.
    pub fn to_script(&self) -> String {
        let mut s = format!("object {}\n", self.domain);
        for l in &self.layers {
            s.push_str(&l.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for WebExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<String> = self.layers.iter().map(|l| l.to_string()).collect();
        write!(f, "({}) [{}]", self.domain, ls.join(", "))
    }
}

impl fmt::Debug for WebExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A formal linear combination of webs with a common boundary.
#[derive(Clone, PartialEq, Eq)]
pub struct WebCombination {
    domain: Composition,
    codomain: Composition,
    terms: Vec<(GaussianRational, WebExpr)>,
}

impl WebCombination {
    pub fn zero(domain: Composition, codomain: Composition) -> Self {
        Self { domain, codomain, terms: Vec::new() }
    }

    pub fn from_expr(w: WebExpr) -> Self {
        Self::scaled(GaussianRational::one(), w)
    }

    pub fn scaled(c: GaussianRational, w: WebExpr) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(c, w.clone())] };
        Self { domain: w.domain.clone(), codomain: w.codomain.clone(), terms }
    }

    pub fn identity(obj: Composition) -> Result<Self> {
        Ok(Self::from_expr(WebExpr::identity(obj)?))
    }

    pub fn domain(&self) -> &Composition {
        &self.domain
    }

    pub fn codomain(&self) -> &Composition {
        &self.codomain
    }

    pub fn terms(&self) -> &[(GaussianRational, WebExpr)] {
        &self.terms
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

    /// Adds `c·w`; `w` must share the boundary.
    pub fn push(&mut self, c: GaussianRational, w: WebExpr) -> Result<()> {
        if w.domain != self.domain || w.codomain != self.codomain {
            return Err(Error::InvalidWeb(format!(
                "term {w} does not have boundary {:?} -> {:?}",
                self.domain, self.codomain
            )));
        }
        if !c.is_zero() {
            self.terms.push((c, w));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (c, w) in &other.terms {
            out.push(c.clone(), w.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&GaussianRational::from_int(-1)))
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let terms = if s.is_zero() { Vec::new() } else { self.terms.iter().map(|(c, w)| (c * s, w.clone())).collect() };
        Self { domain: self.domain.clone(), codomain: self.codomain.clone(), terms }
    }

    /// `self ∘ below` (`self` on top). Mismatched boundaries give zero.
    pub fn over(&self, below: &Self) -> Self {
        let mut out = Self::zero(below.domain.clone(), self.codomain.clone());
        if below.codomain != self.domain {
            return out;
        }
        for (a, x) in &self.terms {
            for (b, y) in &below.terms {
                let w = x.over(y).expect("boundaries checked");
                out.terms.push((a * b, w));
            }
        }
        out
    }

    pub fn embed(&self, left: &[usize], right: &[usize]) -> Self {
        let pad = |c: &Composition| {
            let mut p = left.to_vec();
            p.extend_from_slice(&c.parts);
            p.extend_from_slice(right);
            Composition::new(p)
        };
        Self {
            domain: pad(&self.domain),
            codomain: pad(&self.codomain),
            terms: self.terms.iter().map(|(c, w)| (c.clone(), w.embed(left, right))).collect(),
        }
    }

    pub fn mirror(&self) -> Self {
        let rev = |c: &Composition| Composition::new(c.parts.iter().rev().copied().collect());
        Self {
            domain: rev(&self.domain),
            codomain: rev(&self.codomain),
            terms: self.terms.iter().map(|(c, w)| (c.clone(), w.mirror())).collect(),
        }
    }

    pub fn flip(&self) -> Self {
        Self {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            terms: self.terms.iter().map(|(c, w)| (c.clone(), w.flip())).collect(),
        }
    }

    /// The common parity, or `None` if the terms mix parities.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.iter().map(|(_, w)| w.parity());
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }
}

impl fmt::Display for WebCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 : ({}) -> ({})", self.domain, self.codomain);
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, w)| format!("({c})·{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for WebCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A product of web combinations kept unexpanded, bottom factor first.
///
/// Expanding a long product multiplies the number of terms; evaluation can
/// instead go factor by factor.
#[derive(Clone, Debug)]
pub struct WebStack {
    factors: Vec<WebCombination>,
}

impl WebStack {
    pub fn identity(obj: Composition) -> Result<Self> {
        Ok(Self { factors: vec![WebCombination::identity(obj)?] })
    }

    pub fn from_combination(c: WebCombination) -> Self {
        Self { factors: vec![c] }
    }

    pub fn factors(&self) -> &[WebCombination] {
        &self.factors
    }

    pub fn domain(&self) -> &Composition {
        self.factors[0].domain()
    }

    pub fn codomain(&self) -> &Composition {
        self.factors.last().expect("nonempty").codomain()
    }

    /// Stacks `c` on top.
    pub fn then(mut self, c: WebCombination) -> Result<Self> {
        if c.domain() != self.codomain() {
            return Err(Error::InvalidWeb(format!("cannot stack {:?} on {:?}", c.domain(), self.codomain())));
        }
        self.factors.push(c);
        Ok(self)
    }

    pub fn then_expr(self, w: WebExpr) -> Result<Self> {
        self.then(WebCombination::from_expr(w))
    }

    /// Stacks another product on top.
    pub fn then_stack(mut self, s: WebStack) -> Result<Self> {
        for f in s.factors {
            self = self.then(f)?;
        }
        Ok(self)
    }

    pub fn scale(mut self, s: &GaussianRational) -> Self {
        self.factors[0] = self.factors[0].scale(s);
        self
    }

    /// Multiplies the product out.
    pub fn expand(&self) -> WebCombination {
        let mut acc = self.factors[0].clone();
        for f in &self.factors[1..] {
            acc = f.over(&acc);
        }
        acc
    }

    pub fn embed(&self, left: &[usize], right: &[usize]) -> Self {
        Self { factors: self.factors.iter().map(|f| f.embed(left, right)).collect() }
    }

    pub fn mirror(&self) -> Self {
        Self { factors: self.factors.iter().map(|f| f.mirror()).collect() }
    }

    /// Upside down: factor order reverses and each factor flips.
    pub fn flip(&self) -> Self {
        Self { factors: self.factors.iter().rev().map(|f| f.flip()).collect() }
    }
}

/// Merges `m` consecutive strands starting at position `p` into one.
fn merge_run(w: &mut WebExpr, p: usize, m: usize) -> Result<()> {
    for _ in 1..m {
        w.push(Layer::Merge(p))?;
    }
    Ok(())
}

/// Splits the strand at `p` completely into 1-strands.
fn explode_at(w: &mut WebExpr, p: usize) -> Result<()> {
    let a = w.codomain().parts[p - 1];
    for k in 0..a.saturating_sub(1) {
        w.push(Layer::Split(p + k, 1, a - 1 - k))?;
    }
    Ok(())
}

/// Full merges from `(1,…,1)` to `b`.
pub fn merges_from_ones(b: &Composition) -> Result<WebExpr> {
    let mut w = WebExpr::identity(Composition::omega(b.total()))?;
    for (j, &bj) in b.parts.iter().enumerate() {
        merge_run(&mut w, j + 1, bj)?;
    }
    debug_assert_eq!(w.codomain(), b);
    Ok(w)
}

/// Full splits from `c` to `(1,…,1)`.
pub fn splits_to_ones(c: &Composition) -> Result<WebExpr> {
    let mut w = WebExpr::identity(c.clone())?;
    let mut p = 1;
    for &cj in &c.parts {
        explode_at(&mut w, p)?;
        p += cj;
    }
    Ok(w)
}

/// Crossing of the 1-strands at positions `i`, `i+1` of `obj`:
/// `(merge then split) − identity`.
pub fn crossing_ones(obj: &Composition, i: usize) -> Result<WebCombination> {
    if i == 0 || i >= obj.len() || obj.parts[i - 1] != 1 || obj.parts[i] != 1 {
        return Err(Error::InvalidWeb(format!("cross@{i} needs two 1-strands in {obj:?}")));
    }
    let id = WebExpr::identity(obj.clone())?;
    let ms = id.clone().with(Layer::Merge(i))?.with(Layer::Split(i, 1, 1))?;
    let mut c = WebCombination::from_expr(ms);
    c.push(GaussianRational::from_int(-1), id)?;
    Ok(c)
}

/// The web of a permutation of 1-strands as a product of crossings: strand at
/// bottom position `p` ends at top position `σ(p)`. The permutation acts on the
/// `σ.rank()` strands starting at position `offset + 1` of `obj`.
pub fn permutation_stack(obj: &Composition, offset: usize, sigma: &Permutation) -> Result<WebStack> {
    let mut s = WebStack::identity(obj.clone())?;
    // σ = s_{i1} ⋯ s_{ik}: s_{ik} is lowest
    for &i in sigma.reduced_word().iter().rev() {
        s = s.then(crossing_ones(obj, offset + i)?)?;
    }
    Ok(s)
}

/// Crossing of strands `i` (label `k`) and `i+1` (label `l`), unexpanded.
pub fn crossing_stack(obj: &Composition, i: usize) -> Result<WebStack> {
    if i == 0 || i >= obj.len() {
        return Err(Error::InvalidWeb(format!("cross@{i} out of range for {obj:?}")));
    }
    let (k, l) = (obj.parts[i - 1], obj.parts[i]);
    if k == 1 && l == 1 {
        return Ok(WebStack::from_combination(crossing_ones(obj, i)?));
    }
    let mut bottom = WebExpr::identity(obj.clone())?;
    explode_at(&mut bottom, i + 1)?;
    explode_at(&mut bottom, i)?;
    let mid = bottom.codomain().clone();
    // block swap: the k left strands go right, the l right strands go left
    let images: Vec<usize> = (1..=k + l).map(|p| if p <= k { p + l } else { p - k }).collect();
    let sigma = Permutation::from_images(&images)?;
    let perm = permutation_stack(&mid, i - 1, &sigma)?;
    let mut top = WebExpr::identity(mid)?;
    merge_run(&mut top, i + 1, k)?;
    merge_run(&mut top, i, l)?;
    let scale = GaussianRational::ratio(1, (factorial(k) * factorial(l)) as i64);
    WebStack::from_combination(WebCombination::scaled(scale, bottom)).then_stack(perm)?.then_expr(top)
}

/// Expanded crossing.
pub fn expand_crossing(obj: &Composition, i: usize) -> Result<WebCombination> {
    Ok(crossing_stack(obj, i)?.expand())
}

/// The clasp `Cl_k` on the `k` 1-strands starting at position `i`:
/// `(1/k!)·(merge all, then split all)`.
pub fn expand_clasp(obj: &Composition, i: usize, k: usize) -> Result<WebCombination> {
    if i == 0 || k == 0 || i + k - 1 > obj.len() || obj.parts[i - 1..i - 1 + k].iter().any(|&x| x != 1) {
        return Err(Error::InvalidWeb(format!("clasp@{i}({k}) needs {k} 1-strands in {obj:?}")));
    }
    let mut w = WebExpr::identity(obj.clone())?;
    merge_run(&mut w, i, k)?;
    explode_at(&mut w, i)?;
    Ok(WebCombination::scaled(GaussianRational::ratio(1, factorial(k) as i64), w))
}

/// Sergeev diagram of `c^a σ`: crossings for `σ` at the bottom, then dots
/// with `c_r` lowest and `c_1` on top.
pub fn sergeev_diagram(w: &SergeevBasisWord) -> Result<WebStack> {
    let obj = Composition::omega(w.rank());
    let mut s = permutation_stack(&obj, 0, &w.perm)?;
    let mut dots = WebExpr::identity(obj)?;
    for &j in w.prime_indices().iter().rev() {
        dots.push(Layer::Dot(j))?;
    }
    s = s.then_expr(dots)?;
    Ok(s)
}

/// `ξ(x)` as one unexpanded product per basis word.
pub fn xi_stacks(x: &SergeevElement) -> Result<Vec<(GaussianRational, WebStack)>> {
    x.terms().into_iter().map(|(w, c)| Ok((c, sergeev_diagram(&w)?))).collect()
}

/// `ξ(x)` fully expanded.
pub fn xi(x: &SergeevElement) -> Result<WebCombination> {
    let obj = Composition::omega(x.rank());
    let mut out = WebCombination::zero(obj.clone(), obj);
    for (c, s) in xi_stacks(x)? {
        out = out.add(&s.expand().scale(&c))?;
    }
    Ok(out)
}

/// `β(w)`: full merges from 1-strands below `w`, full splits above.
pub fn beta_stack(w: WebStack) -> Result<WebStack> {
    let below = merges_from_ones(w.domain())?;
    let above = splits_to_ones(w.codomain())?;
    WebStack::from_combination(WebCombination::from_expr(below)).then_stack(w)?.then_expr(above)
}

pub fn beta(w: &WebCombination) -> Result<WebCombination> {
    Ok(beta_stack(WebStack::from_combination(w.clone()))?.expand())
}

/// `θ(u)` for `u` on 1-strands: full splits of `b` below, merges to `c` above.
pub fn theta_stack(u: WebStack, b: &Composition, c: &Composition) -> Result<WebStack> {
    let r = b.total();
    if u.domain() != &Composition::omega(r) || u.codomain() != &Composition::omega(r) || c.total() != r {
        return Err(Error::InvalidWeb("theta needs a web on 1-strands of matching thickness".into()));
    }
    let below = splits_to_ones(b)?;
    let above = merges_from_ones(c)?;
    WebStack::from_combination(WebCombination::from_expr(below)).then_stack(u)?.then_expr(above)
}

pub fn theta(u: &WebCombination, b: &Composition, c: &Composition) -> Result<WebCombination> {
    Ok(theta_stack(WebStack::from_combination(u.clone()), b, c)?.expand())
}

/// `w_T` and `θ_T` for a `λ`-supertabloid `T` of type `μ`.
#[derive(Clone, Debug)]
pub struct ThetaT {
    pub tabloid: Supertabloid,
    pub word: SergeevBasisWord,
    pub web: WebStack,
}

/// Builds `w_T` and `θ_T`. Bottom positions run through the rows of `T` in
/// order; each entry goes to the leftmost free top position in the block of its
/// letter, and primed entries get a dot at their top position.
pub fn build_theta_t(t: &Supertabloid, mu: &Composition) -> Result<ThetaT> {
    if !t.has_type(mu) {
        return Err(Error::InvalidTabloid(format!("{t} is not of type {mu:?}")));
    }
    let r = mu.total();
    let mut next_free: Vec<usize> = Vec::with_capacity(mu.len());
    let mut start = 1;
    for &m in &mu.parts {
        next_free.push(start);
        start += m;
    }
    let mut images = Vec::with_capacity(r);
    let mut primes = 0u32;
    for e in t.rows().iter().flatten() {
        let q = next_free[e.letter - 1];
        next_free[e.letter - 1] += 1;
        images.push(q);
        if e.primed {
            primes |= 1 << (q - 1);
        }
    }
    let word = SergeevBasisWord::new(primes, Permutation::from_images(&images)?);
    let lambda = t.shape().strip_zeros();
    let mu_obj = mu.strip_zeros();
    let web = theta_stack(sergeev_diagram(&word)?, &lambda, &mu_obj)?;
    Ok(ThetaT { tabloid: t.clone(), word, web })
}

/// Builds webs on objects that may contain `0` or negative labels.
///
/// Zero strands are erased, a dot on a zero strand kills the web and a
/// negative label kills the web. Positions are indices into the full label
/// list, zeros included.
#[derive(Clone, Debug)]
pub struct WebBuilder {
    labels: Vec<i64>,
    expr: Option<WebExpr>,
}

impl WebBuilder {
    pub fn new(labels: &[i64]) -> Self {
        let expr = if labels.iter().any(|&x| x < 0) || labels.iter().all(|&x| x == 0) {
            None
        } else {
            let obj = Composition::new(labels.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect());
            Some(WebExpr::identity(obj).expect("positive parts"))
        };
        Self { labels: labels.to_vec(), expr }
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn is_zero(&self) -> bool {
        self.expr.is_none()
    }

    pub fn finish(self) -> Option<WebExpr> {
        if self.labels.iter().any(|&x| x < 0) {
            return None;
        }
        self.expr
    }

    /// Actual strand index of full position `p` (1-based), zeros skipped.
    fn actual(&self, p: usize) -> usize {
        self.labels[..p - 1].iter().filter(|&&x| x != 0).count() + 1
    }

    fn kill(&mut self) {
        self.expr = None;
    }

    fn push(&mut self, l: Layer) {
        if let Some(w) = self.expr.as_mut() {
            w.push(l).expect("builder keeps layers valid");
        }
    }

    pub fn merge(mut self, p: usize) -> Self {
        let (a, b) = (self.labels[p - 1], self.labels[p]);
        if a < 0 || b < 0 {
            self.kill();
        } else if a > 0 && b > 0 {
            let q = self.actual(p);
            self.push(Layer::Merge(q));
        }
        self.labels[p - 1] = a + b;
        self.labels.remove(p);
        self
    }

    pub fn split(mut self, p: usize, k: i64, l: i64) -> Self {
        let a = self.labels[p - 1];
        if k < 0 || l < 0 || a != k + l {
            self.kill();
        } else if k > 0 && l > 0 {
            let q = self.actual(p);
            self.push(Layer::Split(q, k as usize, l as usize));
        }
        self.labels[p - 1] = k;
        self.labels.insert(p, l);
        self
    }

    pub fn dot(mut self, p: usize) -> Self {
        if self.labels[p - 1] <= 0 {
            self.kill();
        } else {
            let q = self.actual(p);
            self.push(Layer::Dot(q));
        }
        self
    }

    /// A rung carrying `j` from strand `p+1` to strand `p`, optionally dotted.
    pub fn rung_left(self, p: usize, j: i64, dotted: bool) -> Self {
        let a = self.labels[p];
        let mut b = self.split(p + 1, j, a - j);
        if dotted {
            b = b.dot(p + 1);
        }
        b.merge(p)
    }

    /// A rung carrying `j` from strand `p` to strand `p+1`, optionally dotted.
    pub fn rung_right(self, p: usize, j: i64, dotted: bool) -> Self {
        let a = self.labels[p - 1];
        let mut b = self.split(p, a - j, j);
        if dotted {
            b = b.dot(p + 1);
        }
        b.merge(p + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: &[usize]) -> Composition {
        Composition::from(p)
    }

    #[test]
    fn layer_targets() {
        let w = WebExpr::new(c(&[2, 1, 3]), vec![Layer::Merge(1)]).unwrap();
        assert_eq!(w.codomain(), &c(&[3, 3]));
        let w = WebExpr::new(c(&[6]), vec![Layer::Split(1, 2, 4), Layer::Dot(2)]).unwrap();
        assert_eq!(w.codomain(), &c(&[2, 4]));
        assert_eq!(w.parity(), Parity::Odd);
        assert!(WebExpr::new(c(&[2]), vec![Layer::Split(1, 1, 2)]).is_err());
        assert!(WebExpr::new(c(&[2]), vec![Layer::Merge(1)]).is_err());
    }

    #[test]
    fn composition_of_combinations() {
        let id = WebCombination::identity(c(&[2])).unwrap();
        let split = WebCombination::from_expr(WebExpr::new(c(&[2]), vec![Layer::Split(1, 1, 1)]).unwrap());
        let merge = WebCombination::from_expr(WebExpr::new(c(&[1, 1]), vec![Layer::Merge(1)]).unwrap());
        assert_eq!(id.over(&id), id);
        let digon = merge.over(&split);
        assert_eq!(digon.terms()[0].1.layers(), &[Layer::Split(1, 1, 1), Layer::Merge(1)]);
        assert!(split.over(&split).is_zero());
    }

    #[test]
    fn mirror_and_flip_are_involutions() {
        let w = WebExpr::new(c(&[2, 1, 3]), vec![Layer::Merge(1), Layer::Split(2, 1, 2), Layer::Dot(3), Layer::Merge(2)])
            .unwrap();
        assert_eq!(w.mirror().mirror(), w);
        assert_eq!(w.flip().flip(), w);
        assert_eq!(w.flip().domain(), w.codomain());
        assert_eq!(w.mirror().domain(), &c(&[3, 1, 2]));
    }

    #[test]
    fn crossing_shapes() {
        let x = expand_crossing(&c(&[1, 1]), 1).unwrap();
        assert_eq!(x.len(), 2);
        let x = expand_crossing(&c(&[2, 1]), 1).unwrap();
        assert_eq!(x.codomain(), &c(&[1, 2]));
        assert_eq!(x.len(), 4);
    }

    #[test]
    fn six_box_w_t() {
        let t: Supertabloid = "[2,3'],[3],[1',2',2]".parse().unwrap();
        let th = build_theta_t(&t, &c(&[1, 3, 2])).unwrap();
        assert_eq!(th.word.perm.images(), vec![2, 5, 6, 1, 3, 4]);
        assert_eq!(th.word.prime_indices(), vec![1, 3, 5]);
        let expected = SergeevBasisWord::new(0b10101, Permutation::from_word(6, &[1, 4, 3, 5, 4, 2, 3]));
        assert_eq!(th.word, expected);
        assert_eq!(th.web.domain(), &c(&[2, 1, 3]));
        assert_eq!(th.web.codomain(), &c(&[1, 3, 2]));
    }

    #[test]
    fn trivial_theta_t() {
        let t: Supertabloid = "[1]".parse().unwrap();
        let th = build_theta_t(&t, &c(&[1])).unwrap();
        assert!(th.word.perm.is_identity() && th.word.primes == 0);
        let e = th.web.expand();
        assert_eq!(e.len(), 1);
        assert!(e.terms()[0].1.layers().is_empty());
    }

    #[test]
    fn builder_erases_zero_strands() {
        // rung of 1 from a 1-strand onto a 2-strand: the source disappears
        let w = WebBuilder::new(&[2, 1]).rung_left(1, 1, false).finish().unwrap();
        assert_eq!(w.codomain(), &c(&[3]));
        assert_eq!(w.layers(), &[Layer::Merge(1)]);
        // a dot on an empty rung kills the web
        assert!(WebBuilder::new(&[2, 1]).rung_left(1, 0, true).finish().is_none());
        assert!(WebBuilder::new(&[1, 1]).rung_left(1, 2, false).finish().is_none());
        let w = WebBuilder::new(&[2, 0]).rung_right(1, 1, true).finish().unwrap();
        assert_eq!(w.layers(), &[Layer::Split(1, 1, 1), Layer::Dot(2)]);
    }
}
