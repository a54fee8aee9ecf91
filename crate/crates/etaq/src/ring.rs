//! Coefficient rings for truncated series: exact integers of unbounded
//! magnitude, integers modulo a machine-word modulus, and Gaussian integers
//! with exact integer parts.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

use crate::error::Error;

/// The ambient ring a [`crate::series::TruncatedSeries`] computes in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoefficientRing {
    /// Signed integers of unbounded magnitude.
    ExactInt,
    /// Integers modulo `m`, stored in a machine word. Requires `2 <= m <= 2^31`.
    ModInt(u64),
    /// Gaussian integers `a + bi` with exact integer parts.
    GaussianInt,
}

impl CoefficientRing {
    /// Validate the ring parameters (modulus range for `ModInt`).
    pub fn validate(self) -> Result<(), Error> {
        if let CoefficientRing::ModInt(m) = self {
            if m < 2 || m > (1 << 31) {
                return Err(Error::BadModulus(m));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::ExactInt => write!(f, "Z"),
            CoefficientRing::ModInt(m) => write!(f, "Z/{}", m),
            CoefficientRing::GaussianInt => write!(f, "Z[i]"),
        }
    }
}

/// A Gaussian integer with arbitrary-precision parts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        GaussInt::default()
    }

    pub fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    pub fn i() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussInt { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GaussInt { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn neg(&self) -> Self {
        GaussInt { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussInt {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    /// Multiplicative inverse, defined only for the four units.
    pub fn invert_unit(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_one() {
            Some(self.conj())
        } else {
            None
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// A coefficient value in any of the three rings, used at API boundaries
/// (sparse construction, scalars, reading coefficients back out).
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(BigInt),
    Mod(u64),
    Gauss(GaussInt),
}

impl Value {
    pub fn int(v: i64) -> Self {
        Value::Int(BigInt::from(v))
    }

    pub fn gauss(re: i64, im: i64) -> Self {
        Value::Gauss(GaussInt::new(re, im))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Int(v) => v.is_zero(),
            Value::Mod(v) => *v == 0,
            Value::Gauss(v) => v.is_zero(),
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::int(v)
    }
}

impl From<BigInt> for Value {
    fn from(v: BigInt) -> Self {
        Value::Int(v)
    }
}

impl From<GaussInt> for Value {
    fn from(v: GaussInt) -> Self {
        Value::Gauss(v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{}", v),
            Value::Mod(v) => write!(f, "{}", v),
            Value::Gauss(v) => write!(f, "{}", v),
        }
    }
}

/// Reduce an arbitrary signed integer into `[0, m)`.
pub(crate) fn reduce_bigint_mod(v: &BigInt, m: u64) -> u64 {
    let m_big = BigInt::from(m);
    let mut r = v % &m_big;
    if r.is_negative() {
        r += &m_big;
    }
    // r is in [0, m), fits in u64
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

pub(crate) fn mod_add(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m { s - m } else { s }
}

pub(crate) fn mod_sub(a: u64, b: u64, m: u64) -> u64 {
    if a >= b { a - b } else { a + m - b }
}

pub(crate) fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    // moduli are <= 2^31 so the product fits in u64
    (a * b) % m
}

/// Modular inverse in `[0, m)`, if `gcd(a, m) == 1`.
pub(crate) fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
