//! Exact sparse Gaussian elimination over Q(i).

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::scalar::{mul_mod, pow_mod, GaussianRational};

/// A sparse vector: sorted column indices with nonzero values.
pub type SparseRow = Vec<(usize, GaussianRational)>;

/// Incrementally built row echelon form.
///
/// Each stored row has leading coefficient 1 and only entries to the right of
/// its pivot column.
#[derive(Default, Clone)]
pub struct Echelon {
    pivots: FxHashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored rows. Returns the remainder.
    pub fn reduce(&self, row: impl IntoIterator<Item = (usize, GaussianRational)>) -> BTreeMap<usize, GaussianRational> {
        let mut v: BTreeMap<usize, GaussianRational> = BTreeMap::new();
        for (c, x) in row {
            if x.is_zero() {
                continue;
            }
            let e = v.entry(c).or_default();
            *e += x;
            if e.is_zero() {
                v.remove(&c);
            }
        }
        let mut floor = 0usize;
        while let Some((&c, _)) = v.range(floor..).find(|(c, _)| self.pivots.contains_key(c)) {
            let factor = v.remove(&c).expect("present");
            for (k, y) in &self.pivots[&c][1..] {
                let e = v.entry(*k).or_default();
                *e -= &(&factor * y);
                if e.is_zero() {
                    v.remove(k);
                }
            }
            floor = c + 1;
        }
        v
    }

    /// Adds a row; returns true if it was independent of the stored rows.
    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, GaussianRational)>) -> bool {
        let v = self.reduce(row);
        let Some((&lead, lead_val)) = v.iter().next() else {
            return false;
        };
        let inv = lead_val.inv().expect("nonzero pivot");
        let normalized: SparseRow = v.iter().map(|(k, x)| (*k, x * &inv)).collect();
        self.pivots.insert(lead, normalized);
        true
    }
}

/// A prime `p ≡ 1 (mod 4)` below `2^62` and a square root of `-1` modulo it.
pub const MOD_P: u64 = 4_611_686_018_427_387_817;
const MOD_SQRT_M1: u64 = sqrt_minus_one(MOD_P);

const fn sqrt_minus_one(p: u64) -> u64 {
    // a^((p-1)/4) for the first quadratic non-residue a
    let mut a = 2u64;
    loop {
        let s = pow_mod_const(a, (p - 1) / 4, p);
        if (s as u128 * s as u128 % p as u128) as u64 == p - 1 {
            return s;
        }
        a += 1;
    }
}

const fn pow_mod_const(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * a as u128 % p as u128) as u64;
        }
        a = (a as u128 * a as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Rank of the image of a family in `F_p`, or `None` if some entry does not
/// reduce. This never exceeds the rank over `Q(i)`.
pub fn rank_mod_p<I, R>(rows: I) -> Option<usize>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = (usize, GaussianRational)>,
{
    let p = MOD_P;
    let mut pivots: FxHashMap<usize, Vec<(usize, u64)>> = FxHashMap::default();
    for row in rows {
        let mut v: BTreeMap<usize, u64> = BTreeMap::new();
        for (c, x) in row {
            let y = x.reduce_mod(p, MOD_SQRT_M1)?;
            let e = v.entry(c).or_insert(0);
            *e = (*e + y) % p;
        }
        v.retain(|_, x| *x != 0);
        let mut floor = 0usize;
        while let Some((&c, _)) = v.range(floor..).find(|(c, _)| pivots.contains_key(c)) {
            let factor = v.remove(&c).expect("present");
            for &(k, y) in &pivots[&c][1..] {
                let e = v.entry(k).or_insert(0);
                *e = (*e + p - mul_mod(factor, y, p)) % p;
                if *e == 0 {
                    v.remove(&k);
                }
            }
            floor = c + 1;
        }
        if let Some((&lead, &lv)) = v.iter().next() {
            let inv = pow_mod(lv, p - 2, p);
            pivots.insert(lead, v.iter().map(|(&k, &x)| (k, mul_mod(x, inv, p))).collect());
        }
    }
    Some(pivots.len())
}

/// Rank over `Q(i)`, using the modular rank as a certificate when it is full.
pub fn certified_rank(rows: Vec<Vec<(usize, GaussianRational)>>) -> usize {
    let n = rows.len();
    if rank_mod_p(rows.iter().map(|r| r.iter().cloned())) == Some(n) {
        return n;
    }
    rank(rows)
}

/// Rank of a family of sparse vectors.
pub fn rank<I, R>(rows: I) -> usize
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = (usize, GaussianRational)>,
{
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Dimension of the solution space of the homogeneous system `rows · x = 0`
/// in `unknowns` variables.
pub fn nullity<I, R>(unknowns: usize, rows: I) -> usize
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = (usize, GaussianRational)>,
{
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
        if e.rank() == unknowns {
            break;
        }
    }
    unknowns - e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn multiples_have_rank_one() {
        let m = vec![(0, g(1)), (3, g(2))];
        let m2: Vec<_> = m.iter().map(|(k, x)| (*k, x * &g(2))).collect();
        assert_eq!(rank([m, m2]), 1);
        assert_eq!(rank(Vec::<SparseRow>::new()), 0);
    }

    #[test]
    fn complex_dependence() {
        let i = GaussianRational::i();
        let a = vec![(0, g(1)), (1, i.clone())];
        let b = vec![(0, i.clone()), (1, g(-1))];
        assert_eq!(rank([a.clone(), b]), 1);
        let c = vec![(0, i.clone()), (1, g(1))];
        assert_eq!(rank([a, c]), 2);
    }

    #[test]
    fn nullity_of_simple_system() {
        // x0 - x1 = 0, x1 - x2 = 0 in 4 unknowns
        let rows = vec![vec![(0, g(1)), (1, g(-1))], vec![(1, g(1)), (2, g(-1))]];
        assert_eq!(nullity(4, rows), 2);
    }

    #[test]
    fn matches_dense_rank_on_random_small_matrices() {
        use proptest::prelude::*;
        let mut runner = proptest::test_runner::TestRunner::default();
        runner
            .run(&proptest::collection::vec(proptest::collection::vec(-2i64..3, 4), 0..6), |m| {
                let rows: Vec<SparseRow> =
                    m.iter().map(|r| r.iter().enumerate().map(|(k, &x)| (k, g(x))).collect()).collect();
                prop_assert_eq!(rank(rows.clone()), dense_rank(&m));
                prop_assert_eq!(rank_mod_p(rows.clone()), Some(dense_rank(&m)));
                prop_assert_eq!(certified_rank(rows), dense_rank(&m));
                Ok(())
            })
            .unwrap();
    }

    #[test]
    fn modular_rank_sees_i() {
        // (1, i) and (i, -1) are dependent over Q(i)
        let rows = vec![vec![(0, g(1)), (1, GaussianRational::i())], vec![(0, GaussianRational::i()), (1, g(-1))]];
        assert_eq!(rank_mod_p(rows.clone()), Some(1));
        assert_eq!(rank(rows), 1);
        assert_eq!(rank_mod_p(vec![vec![(0, GaussianRational::ratio(1, 3))]]), Some(1));
    }

    fn dense_rank(m: &[Vec<i64>]) -> usize {
        // fraction-free elimination over i128
        let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let cols = a.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&k| a[k][c] != 0) else { continue };
            a.swap(rank, p);
            for k in 0..a.len() {
                if k != rank && a[k][c] != 0 {
                    let (f, h) = (a[k][c], a[rank][c]);
                    let pivot = a[rank].clone();
                    for (x, y) in a[k].iter_mut().zip(&pivot) {
                        *x = *x * h - y * f;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
