//! Exact scalars in Q(i) and the Z2 grading.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_q::Rational;

use crate::error::{Error, Result};

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// A Gaussian rational `re + im·i` with exact rational parts.
///
/// Both parts are kept reduced with positive denominators, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self { re: Rational::ZERO, im: Rational::ZERO }
    }

    pub fn one() -> Self {
        Self { re: Rational::ONE, im: Rational::ZERO }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: Rational::ZERO, im: Rational::ONE }
    }

    pub fn from_int(n: i64) -> Self {
        Self { re: Rational::from(n), im: Rational::ZERO }
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self { re: Rational::from_signeds(num, den), im: Rational::ZERO }
    }

    /// `a + b·i` with integer parts.
    pub fn gaussian(a: i64, b: i64) -> Self {
        Self { re: Rational::from(a), im: Rational::from(b) }
    }

    pub fn is_zero(&self) -> bool {
        self.re == Rational::ZERO && self.im == Rational::ZERO
    }

    pub fn is_one(&self) -> bool {
        self.re == Rational::ONE && self.im == Rational::ZERO
    }

    pub fn is_real(&self) -> bool {
        self.im == Rational::ZERO
    }

    /// True when both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.to_denominator() == 1u32 && self.im.to_denominator() == 1u32
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self { re: -&self.im, im: self.re.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        let r = norm.reciprocal();
        Ok(Self { re: &self.re * &r, im: -(&self.im * &r) })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Multiply by `(-1)^odd`.
    /// Image under `Z[i][1/d] → F_p` with `i ↦ sqrt_m1`, when numerators and
    /// denominators fit in a `u64` and no denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64, sqrt_m1: u64) -> Option<u64> {
        let part = |x: &Rational| -> Option<u64> {
            let n = u64::try_from(x.numerator_ref()).ok()? % p;
            let d = u64::try_from(x.denominator_ref()).ok()? % p;
            if d == 0 {
                return None;
            }
            let v = mul_mod(n, pow_mod(d, p - 2, p), p);
            Some(if *x < 0u32 { (p - v) % p } else { v })
        };
        let re = part(&self.re)?;
        let im = part(&self.im)?;
        Some((re + mul_mod(im, sqrt_m1, p)) % p)
    }

    pub fn signed(self, odd: bool) -> Self {
        if odd {
            -self
        } else {
            self
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self { re, im: Rational::ZERO }
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re + o.re, im: self.im + o.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, o: GaussianRational) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re - o.re, im: self.im - o.im }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im == Rational::ZERO && o.im == Rational::ZERO {
            return GaussianRational { re: &self.re * &o.re, im: Rational::ZERO };
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: GaussianRational) -> GaussianRational {
        &self * &o
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = Rational::ZERO;
        if self.im == zero {
            return write!(f, "{}", self.re);
        }
        let im = if self.im == Rational::ONE {
            "i".to_string()
        } else if self.im == -Rational::ONE {
            "-i".to_string()
        } else {
            format!("{}i", self.im)
        };
        if self.re == zero {
            write!(f, "{im}")
        } else if self.im > zero {
            write!(f, "{}+{im}", self.re)
        } else {
            write!(f, "{}{im}", self.re)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| Error::Parse(format!("bad rational '{s}'")))
}

fn parse_imag(s: &str) -> Result<Rational> {
    let body = s.trim().trim_end_matches('i').trim().trim_end_matches('*').trim();
    match body {
        "" | "+" => Ok(Rational::ONE),
        "-" => Ok(-Rational::ONE),
        b => parse_rational(b.trim_start_matches('+')),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `p/q`, `s/t i`, `p/q+s/t i` and `p/q-s/t i` (spaces optional).
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        if !t.ends_with('i') {
            return Ok(parse_rational(&t)?.into());
        }
        // split at the last sign that is not in leading position
        let split = t.char_indices().rev().find(|&(k, c)| k > 0 && (c == '+' || c == '-')).map(|(k, _)| k);
        match split {
            Some(k) => Ok(Self::new(parse_rational(&t[..k])?, parse_imag(&t[k..])?)),
            None => Ok(Self::new(Rational::ZERO, parse_imag(&t)?)),
        }
    }
}

/// An element of Z2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bool(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn from_count(n: usize) -> Self {
        Self::from_bool(n % 2 == 1)
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bool(self.is_odd() != o.is_odd())
    }
}

impl AddAssign for Parity {
    fn add_assign(&mut self, o: Parity) {
        *self = *self + o;
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "odd" } else { "even" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn conjugate_halves_sum_to_one() {
        let a: GaussianRational = "1/2+i".parse().unwrap();
        let b: GaussianRational = "1/2-i".parse().unwrap();
        assert_eq!(a + b, GaussianRational::one());
    }

    #[test]
    fn inverse_of_two_i() {
        let x = GaussianRational::gaussian(0, 2);
        let y = x.inv().unwrap();
        assert_eq!(y, "-1/2 i".parse().unwrap());
        assert_eq!(&x * &y, GaussianRational::one());
        assert_eq!(GaussianRational::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "3", "-1/2", "i", "-i", "2/3i", "1/2+3/4i", "-5-i"] {
            let x: GaussianRational = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
            assert_eq!(x.to_string().parse::<GaussianRational>().unwrap(), x);
        }
        assert_eq!("1/2 + 3/4 i".parse::<GaussianRational>().unwrap().to_string(), "1/2+3/4i");
    }

    #[test]
    fn parity_is_xor() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Even, Parity::Odd);
    }
}
