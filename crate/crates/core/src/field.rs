//! Exact coefficient fields.
//!
//! Everything downstream is generic over [`Field`]. Two implementations are
//! provided: prime fields `GF(p)` with `u32` residues, and the rationals backed
//! by arbitrary precision fractions. Presentations carry coefficients as
//! [`Scalar`] (exact rationals) and are mapped into a concrete field when an
//! algebra is built.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Exact coefficient as it appears in relation files.
pub type Scalar = BigRational;

/// Which field an algebra is computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "field")]
pub enum FieldDescriptor {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "GF")]
    Prime { p: u32 },
}

impl FieldDescriptor {
    pub fn validate(self) -> Result<Self, FieldError> {
        match self {
            FieldDescriptor::Prime { p } if !is_prime(p) => Err(FieldError::NotPrime(p)),
            d => Ok(d),
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::Prime { p } => p,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime { p } => write!(f, "GF({p})"),
        }
    }
}

/// Parses `Q`, `GF:p`, `GF(p)` or `GFp`.
impl FromStr for FieldDescriptor {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldDescriptor::Rationals);
        }
        let upper = t.to_ascii_uppercase();
        let digits = upper
            .strip_prefix("GF")
            .map(|r| r.trim_start_matches([':', '(']).trim_end_matches(')'))
            .ok_or_else(|| FieldError::BadDescriptor(s.to_string()))?;
        let p: u32 = digits.parse().map_err(|_| FieldError::BadDescriptor(s.to_string()))?;
        FieldDescriptor::Prime { p }.validate()
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic in an exact field.
///
/// Elements are plain values; the field object carries whatever context is
/// needed (the modulus for `GF(p)`).
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem, FieldError>;
    /// Canonical rational representative (residue in `0..p` for prime fields).
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    /// A random element; over `Q` an integer in `[-10, 10]`.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// `a += c * b`
    fn add_mul_assign(&self, a: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        *a = self.add(a, &self.mul(c, b));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        base = acc as u32;
        base
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime { p: self.p }
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u32, FieldError> {
        let p = BigInt::from(self.p);
        let num = s.numer().mod_floor(&p).to_u32().unwrap_or(0);
        let den = s.denom().mod_floor(&p).to_u32().unwrap_or(0);
        if den == 0 {
            return Err(FieldError::DenominatorVanishes {
                value: s.to_string(),
                p: self.p,
            });
        }
        Ok(self.mul(&num, &self.inv(&den)))
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::from_integer(BigInt::from(*a))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
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
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational, FieldError> {
        Ok(s.clone())
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        a.clone()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-10..=10))
    }
}

/// Parses `3`, `-2`, `3/4`.
pub fn parse_scalar(s: &str) -> Result<Scalar, FieldError> {
    let t = s.trim();
    let bad = || FieldError::BadScalar(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn scalar_from_i64(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num/den` or `num` when the denominator is one.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// A computation that can run over any [`Field`].
pub trait WithField {
    type Output;
    fn run<F: Field>(self, field: F) -> Self::Output;
}

impl FieldDescriptor {
    /// Runs `job` over the concrete field this descriptor names.
    pub fn dispatch<W: WithField>(self, job: W) -> Result<W::Output, FieldError> {
        Ok(match self.validate()? {
            FieldDescriptor::Rationals => job.run(Rationals),
            FieldDescriptor::Prime { p } => job.run(PrimeField::new(p)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_parsing() {
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
        assert_eq!(
            "GF:5".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Prime { p: 5 }
        );
        assert_eq!(
            "gf(7)".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Prime { p: 7 }
        );
        assert!("GF:6".parse::<FieldDescriptor>().is_err());
        assert!("R".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn descriptor_json_header() {
        let q: FieldDescriptor = serde_json::from_str(r#"{"field":"Q"}"#).unwrap();
        assert_eq!(q, FieldDescriptor::Rationals);
        let gf: FieldDescriptor = serde_json::from_str(r#"{"field":"GF","p":5}"#).unwrap();
        assert_eq!(gf, FieldDescriptor::Prime { p: 5 });
        assert_eq!(serde_json::to_string(&gf).unwrap(), r#"{"field":"GF","p":5}"#);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.from_i64(-1), 6);
        let half = parse_scalar("1/2").unwrap();
        assert_eq!(f.from_scalar(&half).unwrap(), 4);
        let f2 = PrimeField::new(2).unwrap();
        assert!(f2.from_scalar(&half).is_err());
    }

    #[test]
    fn scalar_round_trip() {
        for s in ["3", "-2", "3/4", "-7/5"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(format_scalar(&parse_scalar("4/2").unwrap()), "2");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
