//! Exact scalar fields: the rationals and prime fields.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not a prime")]
    NotPrime(u32),
    #[error("unknown field `{0}` (expected `q` or `fp:<prime>`)")]
    UnknownField(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("denominator of `{0}` is divisible by the characteristic")]
    NonInvertibleDenominator(String),
}

/// The field all linear algebra of a session is carried out over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        if p > 65_521 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Parses `q` or `fp:<p>`.
    pub fn parse(text: &str) -> Result<Self, FieldError> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = t.strip_prefix("fp:") {
            let p: u32 = rest
                .parse()
                .map_err(|_| FieldError::UnknownField(text.to_string()))?;
            return FieldSpec::prime(p);
        }
        Err(FieldError::UnknownField(text.to_string()))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(v)))),
            FieldSpec::Prime(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u32, *p),
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar, FieldError> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Q(Box::new(r.clone()))),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = (r.numer() % &pb + &pb) % &pb;
                let den = (r.denom() % &pb + &pb) % &pb;
                if den.is_zero() {
                    return Err(FieldError::NonInvertibleDenominator(r.to_string()));
                }
                let n = Scalar::Fp(num.to_u32().unwrap_or(0), *p);
                let d = Scalar::Fp(den.to_u32().unwrap_or(0), *p);
                Ok(&n * &d.inverse().expect("nonzero"))
            }
        }
    }

    /// Parses decimal integer text or a fraction `a/b`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let r = parse_rational(text)?;
        self.from_rational(&r)
    }

    /// Uniform element of the field (for the rationals: an integer in `-4..=4`).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rationals => self.from_i64(rng.gen_range(-4..=4)),
            FieldSpec::Prime(p) => Scalar::Fp(rng.gen_range(0..*p), *p),
        }
    }

    /// Random nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational, FieldError> {
    let t = text.trim();
    let bad = || FieldError::BadScalar(text.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// An element of a [`FieldSpec`]. Prime-field elements carry their modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Box<BigRational>),
    Fp(u32, u32),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Fp(_, p) => FieldSpec::Prime(*p),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(r) => Scalar::Q(Box::new(r.recip())),
            Scalar::Fp(v, p) => Scalar::Fp(pow_mod(*v, *p - 2, *p), *p),
        })
    }

    /// Decimal text, `a/b` for non-integral rationals.
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Q(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v, _) => v.to_string(),
        }
    }

    /// Height of a rational scalar (bit length of numerator plus denominator); zero for prime fields.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Q(r) => r.numer().abs().bits() + r.denom().bits(),
            Scalar::Fp(..) => 0,
        }
    }
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    b = acc as u32;
    b
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() + b.as_ref())),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u64 + *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() - b.as_ref())),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() * b.as_ref())),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u64 * *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(Box::new(-a.as_ref())),
            Scalar::Fp(a, p) => Scalar::Fp((*p - *a) % *p, *p),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                *a = ((*a as u64 + *b as u64) % *p as u64) as u32;
            }
            (Scalar::Q(a), Scalar::Q(b)) => {
                **a += b.as_ref();
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                *a = ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32;
            }
            (Scalar::Q(a), Scalar::Q(b)) => {
                **a -= b.as_ref();
            }
            _ => mismatch(self, rhs),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fields() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("fp:7").unwrap(), FieldSpec::Prime(7));
        assert!(FieldSpec::parse("fp:8").is_err());
        assert!(FieldSpec::parse("r").is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = FieldSpec::Prime(7);
        let two = f.from_i64(2);
        assert_eq!(two.inverse().unwrap(), f.from_i64(4));
        assert!(f.zero().inverse().is_none());
    }

    #[test]
    fn fractions_reduce_mod_p() {
        let f = FieldSpec::Prime(7);
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse_scalar("1/7").is_err());
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse_scalar("-6/4").unwrap().to_text(), "-3/2");
    }

    #[test]
    fn negative_integers_wrap() {
        let f = FieldSpec::Prime(5);
        assert_eq!(f.from_i64(-1).to_text(), "4");
        assert_eq!((-&f.one()).to_text(), "4");
    }
}
