//! Supertabloids: rows of possibly primed letters.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::combinat::Composition;
use crate::error::{Error, Result};
use crate::scalar::Parity;
use crate::MAX_R;

/// A letter of the alphabet `1' < 1 < 2' < 2 < ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Entry {
    pub letter: usize,
    pub primed: bool,
}

impl Entry {
    pub fn new(letter: usize, primed: bool) -> Self {
        Self { letter, primed }
    }

    /// Serialized form: `-n` for `n'`, `n` for `n`.
    pub fn to_signed(self) -> i32 {
        if self.primed {
            -(self.letter as i32)
        } else {
            self.letter as i32
        }
    }

    pub fn from_signed(x: i32) -> Result<Self> {
        if x == 0 {
            return Err(Error::InvalidTabloid("entry 0".into()));
        }
        Ok(Self { letter: x.unsigned_abs() as usize, primed: x < 0 })
    }

    pub fn toggled(self) -> Self {
        Self { letter: self.letter, primed: !self.primed }
    }

    pub fn parity(self) -> Parity {
        Parity::from_bool(self.primed)
    }
}

impl Ord for Entry {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.letter, !self.primed).cmp(&(o.letter, !o.primed))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, if self.primed { "'" } else { "" })
    }
}

impl fmt::Debug for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A supertabloid in canonical form: each row sorted in D-order, empty rows kept.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Supertabloid {
    rows: Vec<Vec<Entry>>,
}

impl Supertabloid {
    /// Canonicalizes by sorting each row.
    pub fn new(mut rows: Vec<Vec<Entry>>) -> Self {
        for row in rows.iter_mut() {
            row.sort();
        }
        Self { rows }
    }

    pub fn from_signed_rows(rows: &[Vec<i32>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&x| Entry::from_signed(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(rows))
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn shape(&self) -> Composition {
        Composition::new(self.rows.iter().map(|r| r.len()).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Letter counts: entry `j-1` is the number of entries equal to `j` or `j'`.
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for e in self.rows.iter().flatten() {
            if e.letter <= n {
                c[e.letter - 1] += 1;
            }
        }
        c
    }

    /// True if this is a tabloid of type `mu`.
    pub fn has_type(&self, mu: &Composition) -> bool {
        let max = self.rows.iter().flatten().map(|e| e.letter).max().unwrap_or(0);
        max <= mu.len() && self.content(mu.len()) == mu.parts
    }

    pub fn is_type_omega(&self) -> bool {
        self.has_type(&Composition::omega(self.size()))
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.rows.iter().flatten().filter(|e| e.primed).count())
    }

    pub fn signed_rows(&self) -> Vec<Vec<i32>> {
        self.rows.iter().map(|r| r.iter().map(|e| e.to_signed()).collect()).collect()
    }

    fn check_omega(&self, idx: usize) -> Result<()> {
        let r = self.size();
        if !self.is_type_omega() {
            return Err(Error::InvalidTabloid(format!("{self} is not of type omega")));
        }
        if idx == 0 || idx > r {
            return Err(Error::IndexOutOfRange { index: idx, max: r });
        }
        Ok(())
    }

    fn position(&self, letter: usize) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(i, row)| row.iter().position(|e| e.letter == letter).map(|k| (i, k)))
    }

    /// The unique entry with letter `i` (type-ω tabloids only).
    pub fn entry_at(&self, i: usize) -> Result<Entry> {
        self.check_omega(i)?;
        let (row, k) = self.position(i).expect("type omega");
        Ok(self.rows[row][k])
    }

    /// Row (1-based) holding letter `i` (type-ω tabloids only).
    pub fn row_of(&self, i: usize) -> Result<usize> {
        self.check_omega(i)?;
        Ok(self.position(i).expect("type omega").0 + 1)
    }

    /// `T_{i↔i+1}`: letters `i` and `i+1` trade slots. A slot is a row together
    /// with a prime flag, so primes stay where they were. This is the swap of
    /// tensor factors `i`, `i+1` carried over by the tensor bijection.
    pub fn swap(&self, i: usize) -> Result<Self> {
        self.check_omega(i)?;
        if i == self.size() {
            return Err(Error::IndexOutOfRange { index: i, max: self.size() - 1 });
        }
        let (a, ka) = self.position(i).expect("type omega");
        let (b, kb) = self.position(i + 1).expect("type omega");
        let mut rows = self.rows.clone();
        let ea = rows[a][ka];
        let eb = rows[b][kb];
        rows[a][ka] = Entry::new(i + 1, ea.primed);
        rows[b][kb] = Entry::new(i, eb.primed);
        Ok(Self::new(rows))
    }

    /// `T_{h→h'}`: flips the prime on letter `h`.
    pub fn toggle(&self, h: usize) -> Result<Self> {
        self.check_omega(h)?;
        let (a, k) = self.position(h).expect("type omega");
        let mut rows = self.rows.clone();
        rows[a][k] = rows[a][k].toggled();
        Ok(Self::new(rows))
    }

    /// Lexicographic key on serialized rows; fixes basis order.
    pub fn sort_key(&self) -> Vec<Vec<i32>> {
        self.signed_rows()
    }
}

impl Ord for Supertabloid {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sort_key().cmp(&o.sort_key())
    }
}

impl PartialOrd for Supertabloid {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Supertabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        f.write_str(&rows.join(","))
    }
}

impl fmt::Debug for Supertabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Supertabloid {
    type Err = Error;

    /// Parses `[3',6'],[2],[1,4',5]`; empty rows are written `[]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('[').ok_or_else(|| Error::Parse(format!("expected '[' in '{s}'")))?;
            let close = open.find(']').ok_or_else(|| Error::Parse(format!("unclosed row in '{s}'")))?;
            let body = &open[..close];
            let mut row = Vec::new();
            for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (num, primed) = match tok.strip_suffix('\'') {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                let letter = num.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry '{tok}'")))?;
                if letter == 0 {
                    return Err(Error::Parse("letters start at 1".into()));
                }
                row.push(Entry::new(letter, primed));
            }
            rows.push(row);
            rest = open[close + 1..].trim_start().trim_start_matches(',').trim_start();
        }
        Ok(Self::new(rows))
    }
}

/// All `λ`-supertabloids of type `μ`, sorted by serialized rows.
///
/// With `at_most_one_prime` only tabloids having no row with two primed copies
/// of the same letter are produced.
pub fn enumerate_tabloids_filtered(
    lambda: &Composition,
    mu: &Composition,
    at_most_one_prime: bool,
) -> Result<Vec<Supertabloid>> {
    if lambda.total() != mu.total() {
        return Err(Error::SizeMismatch(format!("|{lambda:?}| != |{mu:?}|")));
    }
    let n = lambda.len();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<Entry>> = vec![Vec::new(); n];
    let mut room = lambda.parts.clone();
    place_letter(0, mu, &mut rows, &mut room, at_most_one_prime, &mut out);
    out.sort();
    Ok(out)
}

/// All `λ`-supertabloids of type `μ`.
pub fn enumerate_tabloids(lambda: &Composition, mu: &Composition) -> Result<Vec<Supertabloid>> {
    enumerate_tabloids_filtered(lambda, mu, false)
}

fn place_letter(
    j: usize,
    mu: &Composition,
    rows: &mut Vec<Vec<Entry>>,
    room: &mut Vec<usize>,
    one_prime: bool,
    out: &mut Vec<Supertabloid>,
) {
    if j == mu.len() {
        out.push(Supertabloid::new(rows.clone()));
        return;
    }
    distribute(j, 0, mu.parts[j], mu, rows, room, one_prime, out);
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    j: usize,
    row: usize,
    left: usize,
    mu: &Composition,
    rows: &mut Vec<Vec<Entry>>,
    room: &mut Vec<usize>,
    one_prime: bool,
    out: &mut Vec<Supertabloid>,
) {
    if row == rows.len() {
        if left == 0 {
            place_letter(j + 1, mu, rows, room, one_prime, out);
        }
        return;
    }
    for c in 0..=left.min(room[row]) {
        let max_primes = if one_prime { c.min(1) } else { c };
        for p in 0..=max_primes {
            let before = rows[row].len();
            rows[row].extend(std::iter::repeat_n(Entry::new(j + 1, true), p));
            rows[row].extend(std::iter::repeat_n(Entry::new(j + 1, false), c - p));
            room[row] -= c;
            distribute(j, row + 1, left - c, mu, rows, room, one_prime, out);
            room[row] += c;
            rows[row].truncate(before);
        }
    }
}

/// A type-ω supertabloid in compact form.
///
/// `row[h]` is the 0-based row of letter `h+1`, and bit `h` of `primes` marks
/// it primed. Row sets are unordered, so this form is automatically canonical.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct OmegaTabloid {
    r: u8,
    nrows: u8,
    row: [u8; MAX_R],
    primes: u32,
}

impl OmegaTabloid {
    /// From 0-based row indices per letter and a prime mask.
    pub fn from_parts(nrows: usize, rows: &[u8], primes: u32) -> Result<Self> {
        if rows.len() > MAX_R {
            return Err(Error::TooLarge(rows.len()));
        }
        if rows.iter().any(|&x| x as usize >= nrows) {
            return Err(Error::InvalidTabloid("row index out of range".into()));
        }
        let mut row = [0u8; MAX_R];
        row[..rows.len()].copy_from_slice(rows);
        Ok(Self { r: rows.len() as u8, nrows: nrows as u8, row, primes })
    }

    pub fn from_supertabloid(t: &Supertabloid) -> Result<Self> {
        if !t.is_type_omega() {
            return Err(Error::InvalidTabloid(format!("{t} is not of type omega")));
        }
        let r = t.size();
        if r > MAX_R {
            return Err(Error::TooLarge(r));
        }
        let mut row = [0u8; MAX_R];
        let mut primes = 0u32;
        for (i, rw) in t.rows().iter().enumerate() {
            for e in rw {
                row[e.letter - 1] = i as u8;
                if e.primed {
                    primes |= 1 << (e.letter - 1);
                }
            }
        }
        Ok(Self { r: r as u8, nrows: t.rows().len() as u8, row, primes })
    }

    pub fn to_supertabloid(&self) -> Supertabloid {
        let mut rows = vec![Vec::new(); self.nrows as usize];
        for h in 0..self.r as usize {
            rows[self.row[h] as usize].push(Entry::new(h + 1, self.primes >> h & 1 == 1));
        }
        Supertabloid::new(rows)
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r as usize
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows as usize
    }

    /// 0-based row of the 0-based letter `h`.
    #[inline]
    pub fn row0(&self, h: usize) -> usize {
        self.row[h] as usize
    }

    #[inline]
    pub fn primes(&self) -> u32 {
        self.primes
    }

    #[inline]
    pub fn is_primed0(&self, h: usize) -> bool {
        self.primes >> h & 1 == 1
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.primes.count_ones() as usize)
    }

    /// Parity of the primed letters strictly before 0-based letter `h`.
    #[inline]
    pub fn parity_before0(&self, h: usize) -> bool {
        (self.primes & ((1u32 << h) - 1)).count_ones() % 2 == 1
    }

    pub fn shape(&self) -> Composition {
        let mut parts = vec![0; self.nrows as usize];
        for h in 0..self.r as usize {
            parts[self.row[h] as usize] += 1;
        }
        Composition::new(parts)
    }

    /// Letters (0-based) in 0-based row `i`, increasing.
    pub fn row_letters0(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.r as usize).filter(move |&h| self.row[h] as usize == i)
    }

    /// `T_{i↔i+1}` for 0-based `i`.
    #[inline]
    pub fn swapped0(&self, i: usize) -> Self {
        let mut t = *self;
        t.row.swap(i, i + 1);
        let a = self.primes >> i & 1;
        let b = self.primes >> (i + 1) & 1;
        t.primes = (self.primes & !(3 << i)) | (a << (i + 1)) | (b << i);
        t
    }

    /// `T_{h→h'}` for 0-based `h`.
    #[inline]
    pub fn toggled0(&self, h: usize) -> Self {
        let mut t = *self;
        t.primes ^= 1 << h;
        t
    }

    /// Moves 0-based letter `h` to 0-based row `i`.
    #[inline]
    pub fn with_row0(&self, h: usize, i: usize) -> Self {
        let mut t = *self;
        t.row[h] = i as u8;
        t
    }

    /// Rewrites every row index through `f`, with a new row count.
    #[inline]
    pub fn remap_rows(&self, nrows: usize, f: impl Fn(usize) -> usize) -> Self {
        let mut t = *self;
        for h in 0..self.r as usize {
            t.row[h] = f(self.row[h] as usize) as u8;
        }
        t.nrows = nrows as u8;
        t
    }

    pub fn sort_key(&self) -> Vec<Vec<i32>> {
        self.to_supertabloid().sort_key()
    }
}

impl fmt::Display for OmegaTabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_supertabloid())
    }
}

impl fmt::Debug for OmegaTabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The basis `T(λ)` of `M^λ` in compact form, sorted by serialized rows.
pub fn omega_basis(lambda: &Composition) -> Result<Vec<OmegaTabloid>> {
    let r = lambda.total();
    if r > MAX_R {
        return Err(Error::TooLarge(r));
    }
    let n = lambda.len();
    let mut assignments = Vec::new();
    let mut cur = vec![0u8; r];
    let mut room = lambda.parts.clone();
    fn go(h: usize, cur: &mut Vec<u8>, room: &mut Vec<usize>, out: &mut Vec<Vec<u8>>) {
        if h == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..room.len() {
            if room[i] > 0 {
                room[i] -= 1;
                cur[h] = i as u8;
                go(h + 1, cur, room, out);
                room[i] += 1;
            }
        }
    }
    go(0, &mut cur, &mut room, &mut assignments);
    let mut out = Vec::with_capacity(assignments.len() << r);
    for a in &assignments {
        for primes in 0..(1u32 << r) {
            out.push(OmegaTabloid::from_parts(n, a, primes)?);
        }
    }
    let mut keyed: Vec<(Vec<Vec<i32>>, OmegaTabloid)> = out.into_iter().map(|t| (t.sort_key(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::multinomial;

    fn sample_tabloid() -> Supertabloid {
        "[3',6'],[2],[1,4',5]".parse().unwrap()
    }

    #[test]
    fn entry_order() {
        let one_p = Entry::new(1, true);
        let one = Entry::new(1, false);
        let two_p = Entry::new(2, true);
        assert!(one_p < one && one < two_p);
    }

    #[test]
    fn single_box() {
        let ts = enumerate_tabloids(&Composition::from(&[1][..]), &Composition::from(&[1][..])).unwrap();
        assert_eq!(ts.len(), 2);
        assert!(ts.contains(&"[1]".parse().unwrap()));
        assert!(ts.contains(&"[1']".parse().unwrap()));
    }

    #[test]
    fn sample_tabloid_is_enumerated() {
        let ts = enumerate_tabloids(&Composition::from(&[2, 1, 3][..]), &Composition::omega(6)).unwrap();
        assert!(ts.contains(&sample_tabloid()));
    }

    #[test]
    fn omega_counts() {
        let lambda = Composition::from(&[2, 1, 2][..]);
        let ts = enumerate_tabloids(&lambda, &Composition::omega(5)).unwrap();
        assert_eq!(ts.len(), 960);
        assert_eq!(omega_basis(&lambda).unwrap().len(), 960);
    }

    #[test]
    fn compact_basis_matches_general_enumeration() {
        for parts in [&[2, 1][..], &[1, 0, 2], &[3], &[1, 1, 1], &[2, 2]] {
            let lambda = Composition::from(parts);
            let r = lambda.total();
            let general = enumerate_tabloids(&lambda, &Composition::omega(r)).unwrap();
            let compact: Vec<Supertabloid> = omega_basis(&lambda).unwrap().iter().map(|t| t.to_supertabloid()).collect();
            assert_eq!(general, compact);
            assert_eq!(general.len() as u64, multinomial(parts) << r);
        }
    }

    #[test]
    fn sample_tabloid_ops() {
        let t = sample_tabloid();
        assert_eq!(t.entry_at(4).unwrap(), Entry::new(4, true));
        // letters 5 and 6 trade slots; the primes stay with the slots
        let s = t.swap(5).unwrap();
        assert_eq!(s, "[3',5'],[2],[1,4',6]".parse().unwrap());
        assert_eq!(t.toggle(3).unwrap().toggle(3).unwrap(), t);
        assert!(t.swap(6).is_err());
        assert!(t.toggle(7).is_err());
    }

    #[test]
    fn compact_ops_agree() {
        let t = sample_tabloid();
        let c = OmegaTabloid::from_supertabloid(&t).unwrap();
        for i in 1..6 {
            assert_eq!(c.swapped0(i - 1).to_supertabloid(), t.swap(i).unwrap());
        }
        for h in 1..=6 {
            assert_eq!(c.toggled0(h - 1).to_supertabloid(), t.toggle(h).unwrap());
        }
        assert_eq!(c.to_supertabloid(), t);
        assert_eq!(c.parity(), t.parity());
    }

    #[test]
    fn display_round_trip() {
        let t: Supertabloid = "[2,1'],[],[3]".parse().unwrap();
        assert_eq!(t.to_string(), "[1',2],[],[3]");
        assert_eq!(t.shape().parts, vec![2, 0, 1]);
    }
}
