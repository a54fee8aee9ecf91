//! Dense truncated formal power series over the three coefficient rings.
//!
//! A series holds the coefficients of q^0 .. q^(N-1) for a fixed truncation
//! N. Multiplication is schoolbook convolution; the dissected scans that need
//! 15000-term products go through the sparse pentagonal kernels in
//! [`crate::eta`] instead. Binary operations require both operands to share
//! ring and truncation; a mismatch is an error, never an implicit `min`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::ring::{
    mod_add, mod_inv, mod_mul, mod_sub, reduce_bigint_mod, CoefficientRing, GaussInt, Value,
};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Store {
    Int(Vec<BigInt>),
    Mod { m: u64, c: Vec<u64> },
    Gauss(Vec<GaussInt>),
}

/// A truncated formal power series: coefficient of q^n at index n, n < trunc.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    pub(crate) store: Store,
}

/// The m components of a series split by exponent residue: component i at
/// index n holds the coefficient of q^(m*n + i) of the original series.
#[derive(Clone, Debug, PartialEq)]
pub struct DissectionResult {
    pub modulus: usize,
    pub components: Vec<TruncatedSeries>,
}

impl TruncatedSeries {
    pub fn zero(ring: CoefficientRing, trunc: usize) -> Result<Self, Error> {
        ring.validate()?;
        assert!(trunc >= 1, "truncation must be positive");
        let store = match ring {
            CoefficientRing::ExactInt => Store::Int(vec![BigInt::zero(); trunc]),
            CoefficientRing::ModInt(m) => Store::Mod { m, c: vec![0; trunc] },
            CoefficientRing::GaussianInt => Store::Gauss(vec![GaussInt::zero(); trunc]),
        };
        Ok(TruncatedSeries { store })
    }

    pub fn one(ring: CoefficientRing, trunc: usize) -> Result<Self, Error> {
        let mut s = Self::zero(ring, trunc)?;
        match &mut s.store {
            Store::Int(c) => c[0] = BigInt::one(),
            Store::Mod { m, c } => c[0] = 1 % *m,
            Store::Gauss(c) => c[0] = GaussInt::one(),
        }
        Ok(s)
    }

    /// Build a series from sparse (exponent, value) terms. Exponents must be
    /// distinct and below the truncation; values are reduced into the ring.
    pub fn from_terms(
        ring: CoefficientRing,
        trunc: usize,
        terms: &[(usize, Value)],
    ) -> Result<Self, Error> {
        let mut s = Self::zero(ring, trunc)?;
        let mut seen = vec![false; trunc];
        for (e, v) in terms {
            if *e >= trunc {
                return Err(Error::ExponentOutOfRange { exponent: *e, trunc });
            }
            if seen[*e] {
                return Err(Error::DuplicateExponent(*e));
            }
            seen[*e] = true;
            s.set(*e, v)?;
        }
        Ok(s)
    }

    fn set(&mut self, e: usize, v: &Value) -> Result<(), Error> {
        match (&mut self.store, v) {
            (Store::Int(c), Value::Int(x)) => c[e] = x.clone(),
            (Store::Mod { m, c }, Value::Int(x)) => c[e] = reduce_bigint_mod(x, *m),
            (Store::Mod { m, c }, Value::Mod(x)) => c[e] = x % *m,
            (Store::Gauss(c), Value::Gauss(x)) => c[e] = x.clone(),
            (Store::Gauss(c), Value::Int(x)) => c[e] = GaussInt { re: x.clone(), im: BigInt::zero() },
            (store, v) => {
                return Err(Error::RingMismatch(
                    ring_of(store).to_string(),
                    format!("value {:?}", v),
                ))
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> CoefficientRing {
        ring_of(&self.store)
    }

    pub fn trunc(&self) -> usize {
        match &self.store {
            Store::Int(c) => c.len(),
            Store::Mod { c, .. } => c.len(),
            Store::Gauss(c) => c.len(),
        }
    }

    pub fn coeff(&self, n: usize) -> Value {
        match &self.store {
            Store::Int(c) => Value::Int(c[n].clone()),
            Store::Mod { c, .. } => Value::Mod(c[n]),
            Store::Gauss(c) => Value::Gauss(c[n].clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.store {
            Store::Int(c) => c.iter().all(|v| v.is_zero()),
            Store::Mod { c, .. } => c.iter().all(|&v| v == 0),
            Store::Gauss(c) => c.iter().all(|v| v.is_zero()),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), Error> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch(
                self.ring().to_string(),
                other.ring().to_string(),
            ));
        }
        if self.trunc() != other.trunc() {
            return Err(Error::TruncationMismatch(self.trunc(), other.trunc()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_compatible(other)?;
        let store = match (&self.store, &other.store) {
            (Store::Int(a), Store::Int(b)) => {
                Store::Int(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Store::Mod { m, c: a }, Store::Mod { c: b, .. }) => Store::Mod {
                m: *m,
                c: a.iter().zip(b).map(|(&x, &y)| mod_add(x, y, *m)).collect(),
            },
            (Store::Gauss(a), Store::Gauss(b)) => {
                Store::Gauss(a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            }
            _ => unreachable!(),
        };
        Ok(TruncatedSeries { store })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let store = match &self.store {
            Store::Int(a) => Store::Int(a.iter().map(|x| -x).collect()),
            Store::Mod { m, c } => Store::Mod {
                m: *m,
                c: c.iter().map(|&x| mod_sub(0, x, *m)).collect(),
            },
            Store::Gauss(a) => Store::Gauss(a.iter().map(|x| x.neg()).collect()),
        };
        TruncatedSeries { store }
    }

    /// Multiply every coefficient by a scalar from the same ring.
    pub fn scale(&self, v: &Value) -> Result<Self, Error> {
        let store = match (&self.store, v) {
            (Store::Int(a), Value::Int(s)) => Store::Int(a.iter().map(|x| x * s).collect()),
            (Store::Mod { m, c }, Value::Int(s)) => {
                let s = reduce_bigint_mod(s, *m);
                Store::Mod { m: *m, c: c.iter().map(|&x| mod_mul(x, s, *m)).collect() }
            }
            (Store::Mod { m, c }, Value::Mod(s)) => Store::Mod {
                m: *m,
                c: c.iter().map(|&x| mod_mul(x, s % *m, *m)).collect(),
            },
            (Store::Gauss(a), Value::Gauss(s)) => {
                Store::Gauss(a.iter().map(|x| x.mul(s)).collect())
            }
            (Store::Gauss(a), Value::Int(s)) => {
                let s = GaussInt { re: s.clone(), im: BigInt::zero() };
                Store::Gauss(a.iter().map(|x| x.mul(&s)).collect())
            }
            (store, v) => {
                return Err(Error::RingMismatch(
                    ring_of(store).to_string(),
                    format!("scalar {:?}", v),
                ))
            }
        };
        Ok(TruncatedSeries { store })
    }

    /// Schoolbook product, truncation preserved.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_compatible(other)?;
        let n = self.trunc();
        let store = match (&self.store, &other.store) {
            (Store::Int(a), Store::Int(b)) => {
                let mut c = vec![BigInt::zero(); n];
                for (i, ai) in a.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    for (j, bj) in b.iter().take(n - i).enumerate() {
                        if !bj.is_zero() {
                            c[i + j] += ai * bj;
                        }
                    }
                }
                Store::Int(c)
            }
            (Store::Mod { m, c: a }, Store::Mod { c: b, .. }) => {
                let m = *m;
                let mut c = vec![0u64; n];
                for (k, ck) in c.iter_mut().enumerate() {
                    // moduli fit in 31 bits, so u128 absorbs the whole sum
                    let mut acc: u128 = 0;
                    for i in 0..=k {
                        acc += (a[i] as u128) * (b[k - i] as u128);
                    }
                    *ck = (acc % m as u128) as u64;
                }
                Store::Mod { m, c }
            }
            (Store::Gauss(a), Store::Gauss(b)) => {
                let mut c = vec![GaussInt::zero(); n];
                for (i, ai) in a.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    for (j, bj) in b.iter().take(n - i).enumerate() {
                        if !bj.is_zero() {
                            c[i + j] = c[i + j].add(&ai.mul(bj));
                        }
                    }
                }
                Store::Gauss(c)
            }
            _ => unreachable!(),
        };
        Ok(TruncatedSeries { store })
    }

    /// Multiplicative inverse; requires the constant term to be a ring unit.
    pub fn invert(&self) -> Result<Self, Error> {
        let n = self.trunc();
        let store = match &self.store {
            Store::Int(a) => {
                let a0 = &a[0];
                if !(a0.is_one() || (-a0).is_one()) {
                    return Err(Error::NonUnitConstant(a0.to_string()));
                }
                let mut b = vec![BigInt::zero(); n];
                b[0] = a0.clone(); // self-inverse: +-1
                for k in 1..n {
                    let mut acc = BigInt::zero();
                    for i in 1..=k {
                        if !a[i].is_zero() {
                            acc += &a[i] * &b[k - i];
                        }
                    }
                    b[k] = -(a0 * acc);
                }
                Store::Int(b)
            }
            Store::Mod { m, c: a } => {
                let m = *m;
                let inv0 = mod_inv(a[0], m)
                    .ok_or_else(|| Error::NonUnitConstant(a[0].to_string()))?;
                let mut b = vec![0u64; n];
                b[0] = inv0;
                for k in 1..n {
                    let mut acc: u128 = 0;
                    for i in 1..=k {
                        acc += (a[i] as u128) * (b[k - i] as u128);
                    }
                    let acc = (acc % m as u128) as u64;
                    b[k] = mod_mul(mod_sub(0, acc, m), inv0, m);
                }
                Store::Mod { m, c: b }
            }
            Store::Gauss(a) => {
                let inv0 = a[0]
                    .invert_unit()
                    .ok_or_else(|| Error::NonUnitConstant(a[0].to_string()))?;
                let mut b = vec![GaussInt::zero(); n];
                b[0] = inv0.clone();
                for k in 1..n {
                    let mut acc = GaussInt::zero();
                    for i in 1..=k {
                        if !a[i].is_zero() {
                            acc = acc.add(&a[i].mul(&b[k - i]));
                        }
                    }
                    b[k] = acc.mul(&inv0).neg();
                }
                Store::Gauss(b)
            }
        };
        Ok(TruncatedSeries { store })
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        if e == 0 {
            return Self::one(self.ring(), self.trunc());
        }
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(self.ring(), self.trunc())?;
        let mut sq = base;
        loop {
            if exp & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            sq = sq.mul(&sq)?;
        }
        Ok(acc)
    }

    /// Substitute q -> q^k: coefficient of q^(k*n) becomes a_n.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        let n = self.trunc();
        let mut out = Self::zero(self.ring(), n).expect("same ring");
        match (&self.store, &mut out.store) {
            (Store::Int(a), Store::Int(b)) => {
                for (i, v) in a.iter().enumerate() {
                    match i.checked_mul(k) {
                        Some(j) if j < n => b[j] = v.clone(),
                        _ => break,
                    }
                }
            }
            (Store::Mod { c: a, .. }, Store::Mod { c: b, .. }) => {
                for (i, &v) in a.iter().enumerate() {
                    match i.checked_mul(k) {
                        Some(j) if j < n => b[j] = v,
                        _ => break,
                    }
                }
            }
            (Store::Gauss(a), Store::Gauss(b)) => {
                for (i, v) in a.iter().enumerate() {
                    match i.checked_mul(k) {
                        Some(j) if j < n => b[j] = v.clone(),
                        _ => break,
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// Multiply by q^s, dropping coefficients pushed past the truncation.
    pub fn shift(&self, s: usize) -> Self {
        let n = self.trunc();
        let mut out = Self::zero(self.ring(), n).expect("same ring");
        if s >= n {
            return out;
        }
        match (&self.store, &mut out.store) {
            (Store::Int(a), Store::Int(b)) => b[s..].clone_from_slice(&a[..n - s]),
            (Store::Mod { c: a, .. }, Store::Mod { c: b, .. }) => {
                b[s..].copy_from_slice(&a[..n - s])
            }
            (Store::Gauss(a), Store::Gauss(b)) => b[s..].clone_from_slice(&a[..n - s]),
            _ => unreachable!(),
        }
        out
    }

    /// Split into m components by exponent residue class.
    pub fn dissect(&self, m: usize) -> DissectionResult {
        assert!(m >= 1, "dissection modulus must be positive");
        let n = self.trunc();
        let comp_len = n.div_ceil(m).max(1);
        let mut components = Vec::with_capacity(m);
        for i in 0..m {
            let mut comp = Self::zero(self.ring(), comp_len).expect("same ring");
            let mut idx = 0usize;
            let mut e = i;
            while e < n && idx < comp_len {
                let v = self.coeff(e);
                comp.set(idx, &v).expect("same ring");
                idx += 1;
                e += m;
            }
            components.push(comp);
        }
        DissectionResult { modulus: m, components }
    }

    /// Reduce an exact-integer series coefficientwise into Z/m, or a Gaussian
    /// series into one with both parts reduced into [0, m).
    pub fn reduce_mod(&self, m: u64) -> Result<Self, Error> {
        CoefficientRing::ModInt(m).validate()?;
        match &self.store {
            Store::Int(a) => Ok(TruncatedSeries {
                store: Store::Mod { m, c: a.iter().map(|v| reduce_bigint_mod(v, m)).collect() },
            }),
            Store::Gauss(a) => Ok(TruncatedSeries {
                store: Store::Gauss(
                    a.iter()
                        .map(|v| GaussInt {
                            re: BigInt::from(reduce_bigint_mod(&v.re, m)),
                            im: BigInt::from(reduce_bigint_mod(&v.im, m)),
                        })
                        .collect(),
                ),
            }),
            Store::Mod { .. } => Err(Error::RingMismatch(
                self.ring().to_string(),
                "reduce_mod expects an exact-integer or Gaussian series".into(),
            )),
        }
    }

    /// Complex conjugation of a Gaussian series (identity on the other rings).
    pub fn conjugate(&self) -> Self {
        match &self.store {
            Store::Gauss(a) => TruncatedSeries {
                store: Store::Gauss(a.iter().map(|v| v.conj()).collect()),
            },
            _ => self.clone(),
        }
    }

    /// Indices n with coefficient congruent to zero (exactly zero for the
    /// exact rings; both parts zero for a reduced Gaussian series).
    pub fn zero_indices(&self) -> Vec<usize> {
        (0..self.trunc()).filter(|&n| self.coeff(n).is_zero()).collect()
    }

    /// First exponent where the two series differ, with both values.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<(usize, Value, Value)>, Error> {
        self.check_compatible(other)?;
        for n in 0..self.trunc() {
            let a = self.coeff(n);
            let b = other.coeff(n);
            if a != b {
                return Ok(Some((n, a, b)));
            }
        }
        Ok(None)
    }
}

fn ring_of(store: &Store) -> CoefficientRing {
    match store {
        Store::Int(_) => CoefficientRing::ExactInt,
        Store::Mod { m, .. } => CoefficientRing::ModInt(*m),
        Store::Gauss(_) => CoefficientRing::GaussianInt,
    }
}

/// Pointwise sum of scaled series: sum of scalar_i * series_i.
pub fn linear_combine(terms: &[(Value, &TruncatedSeries)]) -> Result<TruncatedSeries, Error> {
    let (first_scalar, first) = terms.first().expect("at least one term");
    let mut acc = first.scale(first_scalar)?;
    for (scalar, series) in &terms[1..] {
        acc = acc.add(&series.scale(scalar)?)?;
    }
    Ok(acc)
}

impl DissectionResult {
    /// Reassemble the original series: sum over i of q^i * component_i(q^m).
    pub fn interleave(&self, trunc: usize) -> TruncatedSeries {
        let ring = self.components[0].ring();
        let mut out = TruncatedSeries::zero(ring, trunc).expect("valid ring");
        for (i, comp) in self.components.iter().enumerate() {
            for n in 0..comp.trunc() {
                let e = match n.checked_mul(self.modulus).map(|x| x + i) {
                    Some(e) if e < trunc => e,
                    _ => break,
                };
                let v = comp.coeff(n);
                out.set(e, &v).expect("same ring");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Value;

    fn exact(n: usize, terms: &[(usize, i64)]) -> TruncatedSeries {
        let terms: Vec<(usize, Value)> =
            terms.iter().map(|&(e, v)| (e, Value::int(v))).collect();
        TruncatedSeries::from_terms(CoefficientRing::ExactInt, n, &terms).unwrap()
    }

    #[test]
    fn sparse_construction() {
        let s = exact(4, &[(0, 1)]);
        assert_eq!(s.coeff(0), Value::int(1));
        assert_eq!(s.coeff(3), Value::int(0));

        let s = TruncatedSeries::from_terms(
            CoefficientRing::ModInt(25),
            3,
            &[(1, Value::int(-10))],
        )
        .unwrap();
        assert_eq!(s.coeff(1), Value::Mod(15));

        let s = TruncatedSeries::from_terms(
            CoefficientRing::GaussianInt,
            2,
            &[(1, Value::gauss(0, 1))],
        )
        .unwrap();
        assert_eq!(s.coeff(1), Value::gauss(0, 1));
    }

    #[test]
    fn sparse_construction_errors() {
        let r = TruncatedSeries::from_terms(
            CoefficientRing::ExactInt,
            3,
            &[(1, Value::int(1)), (1, Value::int(2))],
        );
        assert!(matches!(r, Err(Error::DuplicateExponent(1))));
        let r = TruncatedSeries::from_terms(CoefficientRing::ExactInt, 3, &[(3, Value::int(1))]);
        assert!(matches!(r, Err(Error::ExponentOutOfRange { .. })));
    }

    #[test]
    fn mul_geometric() {
        // (1 - q)(1 + q + q^2 + q^3) = 1 - q^4, truncated to 4 terms
        let a = exact(4, &[(0, 1), (1, -1)]);
        let b = exact(4, &[(0, 1), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(a.mul(&b).unwrap(), exact(4, &[(0, 1)]));
    }

    #[test]
    fn mul_f1_square_prefix() {
        // first six coefficients of the square of 1 - q - q^2 + q^5,
        // frozen from a by-hand convolution
        let f1 = exact(6, &[(0, 1), (1, -1), (2, -1), (5, 1)]);
        let sq = f1.mul(&f1).unwrap();
        let expected = exact(6, &[(0, 1), (1, -2), (2, -1), (3, 2), (4, 1), (5, 2)]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn mul_mismatch_errors() {
        let a = exact(4, &[(0, 1)]);
        let b = exact(5, &[(0, 1)]);
        assert!(matches!(a.mul(&b), Err(Error::TruncationMismatch(4, 5))));
        let c = TruncatedSeries::one(CoefficientRing::ModInt(7), 4).unwrap();
        assert!(matches!(a.mul(&c), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn invert_geometric() {
        let a = exact(6, &[(0, 1), (1, -1)]);
        let inv = a.invert().unwrap();
        let all_ones = exact(6, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]);
        assert_eq!(inv, all_ones);
        assert_eq!(a.mul(&inv).unwrap(), TruncatedSeries::one(CoefficientRing::ExactInt, 6).unwrap());
    }

    #[test]
    fn invert_nonunit_errors() {
        let s = TruncatedSeries::from_terms(
            CoefficientRing::ModInt(25),
            4,
            &[(0, Value::int(5))],
        )
        .unwrap();
        assert!(matches!(s.invert(), Err(Error::NonUnitConstant(_))));
    }

    #[test]
    fn pow_group_law() {
        let a = exact(8, &[(0, 1), (1, 3), (2, -2), (4, 1)]);
        assert_eq!(
            a.pow(0).unwrap(),
            TruncatedSeries::one(CoefficientRing::ExactInt, 8).unwrap()
        );
        let via_cube = a.pow(3).unwrap().pow(-1).unwrap();
        assert_eq!(via_cube, a.pow(-3).unwrap());
    }

    #[test]
    fn dilate_and_shift() {
        let a = exact(24, &[(0, 1), (1, -1)]);
        let d = a.dilate(12);
        assert_eq!(d, exact(24, &[(0, 1), (12, -1)]));
        assert_eq!(a.dilate(1), a);

        let s = exact(3, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(s.shift(1), exact(3, &[(1, 1), (2, 2)]));
        assert_eq!(s.shift(0), s);
        assert!(s.shift(5).is_zero());
    }

    #[test]
    fn dissect_interleave() {
        let a = exact(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]);
        let d = a.dissect(2);
        assert_eq!(d.components[0], exact(3, &[(0, 1), (1, 3), (2, 5)]));
        assert_eq!(d.components[1], exact(3, &[(0, 2), (1, 4), (2, 6)]));
        assert_eq!(d.interleave(6), a);

        let single = a.dissect(1);
        assert_eq!(single.components[0], a);
    }

    #[test]
    fn reduce_mod_basics() {
        let a = exact(2, &[(0, -10), (1, 35)]);
        let r = a.reduce_mod(25).unwrap();
        assert_eq!(r.coeff(0), Value::Mod(15));
        assert_eq!(r.coeff(1), Value::Mod(10));
        let z = TruncatedSeries::zero(CoefficientRing::ExactInt, 5).unwrap();
        assert!(z.reduce_mod(7).unwrap().is_zero());
    }

    #[test]
    fn linear_combination() {
        let x = exact(2, &[(0, 1), (1, 2)]);
        let y = exact(2, &[(1, 1)]);
        let z = linear_combine(&[(Value::int(2), &x), (Value::int(3), &y)]).unwrap();
        assert_eq!(z, exact(2, &[(0, 2), (1, 7)]));
        let cancel = linear_combine(&[(Value::int(1), &x), (Value::int(-1), &x)]).unwrap();
        assert!(cancel.is_zero());
    }
}
