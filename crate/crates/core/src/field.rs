//! Exact coefficient fields.
//!
//! All algebra in the crate is generic over [`Field`], a field *context*
//! that owns whatever runtime data the arithmetic needs (such as the prime
//! `p`). Elements are plain values; every operation goes through the
//! context. Prime fields use `u64` residues, the rationals use
//! [`num_rational::BigRational`].

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HblError, Result};

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Uniform element for finite fields, bounded-height integer otherwise.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn spec(&self) -> FieldSpec;
    /// Primes in which exact rank certificates are computed.
    fn certificate_primes(&self) -> Vec<u64>;
    /// Image in `target`; `None` if undefined (a denominator vanishes, or
    /// the characteristics differ).
    fn reduce_into(&self, target: &PrimeField, a: &Self::Elem) -> Option<u64>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a += b * c`
    fn add_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.add(a, &self.mul(b, c));
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }
}

/// Serializable description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime { p: u64 },
    Rational,
}

impl FieldSpec {
    pub const DEFAULT_PRIME: u64 = 10007;

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Prime { p } => PrimeField::new(p).map(|_| ()),
            FieldSpec::Rational => Ok(()),
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime {
            p: Self::DEFAULT_PRIME,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `Z/p`, `2 < p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(HblError::InvalidField(format!(
                "{p} is not an odd prime below 2^31"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduction of a rational number, `None` when `p` divides the denominator.
    pub fn reduce(&self, q: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        self.inv(&den).map(|d| self.mul(&num, &d))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| HblError::Parse(format!("bad residue {s:?}")))?;
        Ok(self.from_i64(v))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }

    fn certificate_primes(&self) -> Vec<u64> {
        vec![self.p]
    }

    fn reduce_into(&self, target: &PrimeField, a: &u64) -> Option<u64> {
        (target.p == self.p).then_some(*a)
    }
}

/// The rationals. `height` bounds the integers drawn by [`Field::sample`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rationals {
    pub height: i64,
}

impl Default for Rationals {
    fn default() -> Self {
        Rationals { height: 100 }
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-self.height..=self.height))
    }

    fn format_elem(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let bad = || HblError::Parse(format!("bad rational {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        let q = BigRational::new(n, d);
        debug_assert!(q.denom().is_positive());
        Ok(q)
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn certificate_primes(&self) -> Vec<u64> {
        vec![10007, 10009]
    }

    fn reduce_into(&self, target: &PrimeField, a: &BigRational) -> Option<u64> {
        target.reduce(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites_and_two() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(10007).is_ok());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(10007).unwrap();
        for a in 1..200 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 10006);
    }

    #[test]
    fn rational_round_trip_text() {
        let q = Rationals::default();
        let x = q.parse_elem("-6/4").unwrap();
        assert_eq!(q.format_elem(&x), "-3/2");
        assert_eq!(q.format_elem(&q.parse_elem("7").unwrap()), "7/1");
        assert!(q.parse_elem("1/0").is_err());
    }

    #[test]
    fn reduce_rational_mod_p() {
        let f = PrimeField::new(7).unwrap();
        let q = Rationals::default().parse_elem("3/2").unwrap();
        // 3 * 2^{-1} = 3 * 4 = 12 = 5 mod 7
        assert_eq!(f.reduce(&q), Some(5));
        let bad = Rationals::default().parse_elem("1/14").unwrap();
        assert_eq!(f.reduce(&bad), None);
    }

    #[test]
    fn spec_json_shape() {
        let s = serde_json::to_string(&FieldSpec::Prime { p: 10007 }).unwrap();
        assert_eq!(s, r#"{"type":"prime","p":10007}"#);
        let r = serde_json::to_string(&FieldSpec::Rational).unwrap();
        assert_eq!(r, r#"{"type":"rational"}"#);
    }
}
