//! Exact fields: the rationals and prime fields `F_p`.
//!
//! Fields are context objects. Elements are plain values and all
//! arithmetic goes through the field, so a single runtime type covers
//! every prime.

use core::fmt::Debug;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn ratio(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub trait Field: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Characteristic; 0 for the rationals.
    fn characteristic(&self) -> u32;
    /// Number of elements, `None` if infinite.
    fn size(&self) -> Option<u64> {
        match self.characteristic() {
            0 => None,
            p => Some(p as u64),
        }
    }
    /// The `k`-th element in a fixed enumeration (finite fields only).
    fn nth(&self, k: u64) -> Self::Elem {
        self.from_int(k as i64)
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, v: i64) -> Rational {
        rat(v as i128)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u32 {
        0
    }
}

/// The prime field `F_p`, elements are residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::Invalid(alloc::format!("{p} is not a supported prime")));
        }
        Ok(Fp { p })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Reduce a rational whose denominator is prime to `p`.
    pub fn reduce(&self, r: &Rational) -> Result<u32> {
        let p = self.p as i128;
        let n = r.numer().rem_euclid(p) as u32;
        let d = r.denom().rem_euclid(p) as u32;
        if d == 0 {
            return Err(Error::Invalid(alloc::format!("denominator divisible by {p}")));
        }
        Ok(self.mul(&n, &self.inv(&d).unwrap()))
    }

    /// Symmetric integer lift in `(-p/2, p/2]`.
    pub fn lift(&self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

impl Field for Fp {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat
        let mut base = *a as u64;
        let mut e = self.p as u64 - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Some(acc as u32)
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The smallest prime strictly larger than `n`.
pub fn next_prime(n: u32) -> u32 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

/// Canonical `p/q` rendering (`p` alone when integral).
pub fn format_rational(r: &Rational) -> alloc::string::String {
    if r.is_integer() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(alloc::format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(ratio(n, d))
        }
        None => Ok(rat(s.parse().map_err(|_| bad())?)),
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        let f = Fp::new(13).unwrap();
        for a in 1..13 {
            let b = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &b), 1);
        }
        assert!(f.inv(&0).is_none());
    }

    #[test]
    fn reduce_fraction() {
        let f = Fp::new(7).unwrap();
        // 1/2 = 4 mod 7
        assert_eq!(f.reduce(&ratio(1, 2)).unwrap(), 4);
        assert_eq!(f.reduce(&rat(-1)).unwrap(), 6);
        assert!(f.reduce(&ratio(1, 7)).is_err());
    }

    #[test]
    fn rejects_composite() {
        assert!(Fp::new(9).is_err());
        assert_eq!(next_prime(17), 19);
    }

    #[test]
    fn rational_text() {
        assert_eq!(format_rational(&ratio(-3, 6)), "-1/2");
        assert_eq!(parse_rational("4/2").unwrap(), rat(2));
        assert!(parse_rational("1/0").is_err());
    }
}
