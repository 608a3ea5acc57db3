//! Exact coefficient fields: the rationals and prime fields GF(p).
//!
//! Polynomial code is generic over [`Field`]. A prime field's modulus is only
//! known at run time (it is read from input files), so construction of
//! constants goes through a per-field context value rather than through
//! `num_traits::Zero`/`One`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational numbers, always in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^62)")]
    ModulusTooLarge(u64),
    #[error("cannot parse field tag `{0}` (expected `Q` or `GF(p)`)")]
    BadTag(String),
    #[error("denominator vanishes in {0}")]
    ZeroDenominator(FieldTag),
}

/// Which field a coefficient lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(FieldTag::Rationals);
        }
        let inner =
            t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')).ok_or_else(|| FieldError::BadTag(t.to_string()))?;
        let p: u64 = inner.trim().parse().map_err(|_| FieldError::BadTag(t.to_string()))?;
        PrimeModulus::new(p)?;
        Ok(FieldTag::PrimeField(p))
    }
}

/// An exact field usable as polynomial coefficients.
///
/// `Ctx` carries whatever a value needs to exist without a sibling value to
/// copy it from: nothing for Q, the modulus for GF(p).
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    /// `num / den` mapped into the field; `None` when `den` vanishes there.
    fn from_ratio(ctx: &Self::Ctx, num: &BigInt, den: &BigInt) -> Option<Self>;
    fn tag(ctx: &Self::Ctx) -> FieldTag;
    fn context(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    /// Whether the canonical text form starts with a minus sign.
    fn is_negative(&self) -> bool {
        false
    }

    /// Number of elements, `None` for infinite fields.
    fn order(ctx: &Self::Ctx) -> Option<u64> {
        match Self::tag(ctx) {
            FieldTag::Rationals => None,
            FieldTag::PrimeField(p) => Some(p),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }

    /// `1` when the value is one of the Boolean constants.
    fn as_bit(&self) -> Option<bool> {
        if self.is_zero() {
            Some(false)
        } else if self.is_one() {
            Some(true)
        } else {
            None
        }
    }
}

impl Field for Rational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Zero::zero()
    }

    fn one(_: &()) -> Self {
        One::one()
    }

    fn from_i64(_: &(), v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(_: &(), num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn tag(_: &()) -> FieldTag {
        FieldTag::Rationals
    }

    fn context(&self) {}

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= (1 << 62) {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of GF(p), stored as its canonical representative in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf {
    value: u64,
    modulus: u64,
}

impl Gf {
    pub fn new(modulus: PrimeModulus, v: i64) -> Self {
        let p = modulus.0 as i128;
        Gf { value: (v as i128).rem_euclid(p) as u64, modulus: modulus.0 }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn same_field(&self, rhs: &Gf) {
        assert_eq!(self.modulus, rhs.modulus, "arithmetic across different prime fields");
    }

    fn pow(self, mut e: u64) -> Gf {
        let p = self.modulus as u128;
        let mut base = self.value as u128;
        let mut acc = 1u128 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Gf { value: acc as u64, modulus: self.modulus }
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        self.same_field(&rhs);
        let s = self.value as u128 + rhs.value as u128;
        Gf { value: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        self + (-rhs)
    }
}

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        Gf { value: if self.value == 0 { 0 } else { self.modulus - self.value }, modulus: self.modulus }
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        self.same_field(&rhs);
        let m = self.value as u128 * rhs.value as u128;
        Gf { value: (m % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

impl Field for Gf {
    type Ctx = PrimeModulus;

    fn zero(ctx: &PrimeModulus) -> Self {
        Gf::new(*ctx, 0)
    }

    fn one(ctx: &PrimeModulus) -> Self {
        Gf::new(*ctx, 1)
    }

    fn from_i64(ctx: &PrimeModulus, v: i64) -> Self {
        Gf::new(*ctx, v)
    }

    fn from_ratio(ctx: &PrimeModulus, num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(ctx.0);
        let reduce = |x: &BigInt| -> Gf {
            let r = x.mod_floor(&p).to_u64().expect("residue fits in u64");
            Gf { value: r, modulus: ctx.0 }
        };
        let d = reduce(den);
        d.inv().map(|di| reduce(num) * di)
    }

    fn tag(ctx: &PrimeModulus) -> FieldTag {
        FieldTag::PrimeField(ctx.0)
    }

    fn context(&self) -> PrimeModulus {
        PrimeModulus(self.modulus)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}
