//! Compositions, permutations and small counting helpers.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite sequence of nonnegative integers. Its sum is the total `r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition {
    pub parts: Vec<usize>,
}

/// Which compositions [`enumerate_compositions`] produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositionMode {
    /// Every composition of `r` with exactly `n` parts.
    All,
    /// Compositions with `n` parts whose only zeros are trailing.
    TrailingZeros,
    /// Compositions with positive parts, of every length `1..=r` (`n` ignored).
    Strict,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    /// `(1, ..., 1)` with `r` parts.
    pub fn omega(r: usize) -> Self {
        Self { parts: vec![1; r] }
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        !self.parts.is_empty() && self.parts.iter().all(|&p| p > 0)
    }

    /// True when every zero part is followed only by zeros.
    pub fn has_trailing_zeros_only(&self) -> bool {
        let nz = self.parts.iter().rposition(|&p| p > 0).map_or(0, |k| k + 1);
        self.parts[..nz].iter().all(|&p| p > 0)
    }

    /// Drops every zero part.
    pub fn strip_zeros(&self) -> Self {
        Self { parts: self.parts.iter().copied().filter(|&p| p > 0).collect() }
    }

    /// Pads a strict composition with zeros up to length `r = total`.
    pub fn hat(&self) -> Result<Self> {
        if !self.is_strict() {
            return Err(Error::InvalidComposition(format!("{self} has a zero part")));
        }
        let r = self.total();
        let mut parts = self.parts.clone();
        parts.resize(r, 0);
        Ok(Self { parts })
    }

    /// Number of permutations in the Young subgroup `S_{λ1} × S_{λ2} × ...`.
    pub fn young_order(&self) -> u64 {
        self.parts.iter().map(|&p| factorial(p)).product()
    }
}

impl From<Vec<usize>> for Composition {
    fn from(parts: Vec<usize>) -> Self {
        Self { parts }
    }
}

impl From<&[usize]> for Composition {
    fn from(parts: &[usize]) -> Self {
        Self { parts: parts.to_vec() }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses `2,1,3` (surrounding parentheses allowed).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Err(Error::Parse("empty composition".into()));
        }
        t.split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part '{p}' in '{s}'"))))
            .collect::<Result<Vec<_>>>()
            .map(Composition::new)
    }
}

/// Enumerates compositions in lexicographic order.
pub fn enumerate_compositions(n: usize, r: usize, mode: CompositionMode) -> Vec<Composition> {
    let mut out = Vec::new();
    match mode {
        CompositionMode::All | CompositionMode::TrailingZeros => {
            if n == 0 {
                return out;
            }
            let mut cur = Vec::with_capacity(n);
            fill_all(n, r, &mut cur, &mut out);
            if mode == CompositionMode::TrailingZeros {
                out.retain(|c| c.has_trailing_zeros_only());
            }
        }
        CompositionMode::Strict => {
            let mut cur = Vec::new();
            fill_strict(r, &mut cur, &mut out);
            out.sort();
        }
    }
    out
}

fn fill_all(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if cur.len() + 1 == n {
        cur.push(left);
        out.push(Composition::new(cur.clone()));
        cur.pop();
        return;
    }
    for p in 0..=left {
        cur.push(p);
        fill_all(n, left - p, cur, out);
        cur.pop();
    }
}

fn fill_strict(left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if left == 0 {
        if !cur.is_empty() {
            out.push(Composition::new(cur.clone()));
        }
        return;
    }
    for p in 1..=left {
        cur.push(p);
        fill_strict(left - p, cur, out);
        cur.pop();
    }
}

/// The set `Λ′(r) = Λ′(r, r)`.
pub fn lambda_prime(r: usize) -> Vec<Composition> {
    enumerate_compositions(r, r, CompositionMode::TrailingZeros)
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u64).fold(1, |acc, j| acc * (n as u64 - j) / (j + 1))
}

pub fn multinomial(parts: &[usize]) -> u64 {
    factorial(parts.iter().sum()) / parts.iter().map(|&p| factorial(p)).product::<u64>()
}

/// All `k`-element subsets of `0..n` as sorted index vectors, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// A permutation of `{1..r}`, stored 0-based: `images[p] = σ(p+1) - 1`.
///
/// Composition is function composition: `σ.compose(τ) = σ∘τ`, so `τ` acts
/// first. This is also the product `στ` in the group algebra.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Self { images: (0..r as u8).collect() }
    }

    /// From 1-based images `σ(1), ..., σ(r)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &x in images {
            if x == 0 || x > r || seen[x - 1] {
                return Err(Error::InvalidComposition(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Self { images: images.iter().map(|&x| (x - 1) as u8).collect() })
    }

    /// From 0-based images.
    pub fn from_zero_based(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort();
            s.iter().enumerate().all(|(k, &x)| x as usize == k)
        });
        Self { images }
    }

    /// The adjacent transposition `s_i` (1-based `i`) in `S_r`.
    pub fn transposition(r: usize, i: usize) -> Self {
        let mut p = Self::identity(r);
        p.images.swap(i - 1, i);
        p
    }

    /// The product `s_{w1} s_{w2} ...` of adjacent transpositions.
    pub fn from_word(r: usize, word: &[usize]) -> Self {
        let mut p = Self::identity(r);
        for &i in word {
            p = p.compose(&Self::transposition(r, i));
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// `σ(p)` for 1-based `p`.
    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    /// `σ(p)` for 0-based `p`.
    #[inline]
    pub fn apply0(&self, p: usize) -> usize {
        self.images[p] as usize
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x as usize == k)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "permutation rank mismatch");
        Self { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.rank()];
        for (p, &x) in self.images.iter().enumerate() {
            inv[x as usize] = p as u8;
        }
        Self { images: inv }
    }

    pub fn inversions(&self) -> usize {
        let n = self.rank();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.images[a] > self.images[b]).count()
    }

    /// The lexicographically first reduced word `[i1, ..., ik]` with
    /// `σ = s_{i1} ⋯ s_{ik}`: repeatedly peel off the smallest `i` such that
    /// `i+1` precedes `i` in one-line notation.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = self.clone();
        loop {
            let inv = cur.inverse();
            let Some(i) = (0..cur.rank().saturating_sub(1)).find(|&i| inv.images[i] > inv.images[i + 1]) else {
                break;
            };
            word.push(i + 1);
            // s_i σ swaps the values i and i+1
            for x in cur.images.iter_mut() {
                if *x as usize == i {
                    *x += 1;
                } else if *x as usize == i + 1 {
                    *x -= 1;
                }
            }
        }
        word
    }

    /// Embeds into `S_r` fixing the extra points.
    pub fn extend(&self, r: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.rank() as u8..r as u8);
        Self { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All permutations of `S_r` in lexicographic order of one-line notation.
pub fn all_permutations(r: usize) -> Vec<Permutation> {
    fn go(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == used.len() {
            out.push(Permutation { images: cur.clone() });
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x as u8);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(r), &mut vec![false; r], &mut out);
    out
}

/// The Young subgroup `S_λ`, each factor permuting a consecutive block.
pub fn young_subgroup(lambda: &Composition) -> Vec<Permutation> {
    let r = lambda.total();
    let mut out = vec![Permutation::identity(r)];
    let mut offset = 0;
    for &p in &lambda.parts {
        let block = all_permutations(p);
        let mut next = Vec::with_capacity(out.len() * block.len());
        for base in &out {
            for b in &block {
                let mut images = base.images.clone();
                for (k, &x) in b.images.iter().enumerate() {
                    images[offset + k] = (offset as u8) + x;
                }
                next.push(Permutation { images });
            }
        }
        out = next;
        offset += p;
    }
    out.sort();
    out
}
