//! Partition-theoretic consequences: partition and distinct-partition
//! counts, pentagonal/square classifiers, representation-count parities,
//! bipartition congruences mod 9, and the signed 3-dissection identities for
//! partitions into distinct parts avoiding multiples of 3.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::isqrt;
use crate::error::Error;
use crate::eta::EtaQuotient;
use crate::report::VerifyReport;
use crate::ring::{CoefficientRing, Value};

/// The unique t with t(3t-1)/2 = n, when n is generalized pentagonal.
pub fn gen_pentagonal_param(n: u64) -> Option<i64> {
    let disc = 24 * n + 1;
    let s = isqrt(disc);
    if s * s != disc {
        return None;
    }
    let s = s as i64;
    if (1 + s) % 6 == 0 {
        Some((1 + s) / 6)
    } else {
        // s = 1 mod 6: t = (1 - s)/6 <= 0
        Some((1 - s) / 6)
    }
}

pub fn is_gen_pentagonal(n: u64) -> bool {
    gen_pentagonal_param(n).is_some()
}

fn is_square(n: u64) -> bool {
    let s = isqrt(n);
    s * s == n
}

/// Membership in the set of positive squares and doubled squares.
pub fn is_s_square(n: u64) -> bool {
    n >= 1 && (is_square(n) || (n % 2 == 0 && is_square(n / 2)))
}

fn eta_table(expr: &str, len: usize) -> Result<Vec<BigInt>, Error> {
    let s = expr.parse::<EtaQuotient>()?.series(CoefficientRing::ExactInt, len)?;
    Ok((0..len)
        .map(|k| match s.coeff(k) {
            Value::Int(v) => v,
            _ => unreachable!(),
        })
        .collect())
}

/// p(0) .. p(nmax) from the inverse of f1.
pub fn partition_table(nmax: usize) -> Vec<BigInt> {
    eta_table("1/f1", nmax + 1).expect("fixed expression parses")
}

/// The unrestricted partition count p(n).
pub fn partition_count(n: usize) -> BigInt {
    partition_table(n).pop().expect("nonempty")
}

/// Q(0) .. Q(nmax): partitions into distinct parts, from f2/f1.
pub fn distinct_table(nmax: usize) -> Vec<BigInt> {
    eta_table("f2/f1", nmax + 1).expect("fixed expression parses")
}

pub fn distinct_count(n: usize) -> BigInt {
    distinct_table(n).pop().expect("nonempty")
}

/// First-component classifier for a representation-count query.
#[derive(Clone, Debug)]
pub enum PartA {
    /// Generalized pentagonal numbers (including 0).
    GenPentagonal,
    /// Exponents where the given eta quotient has an odd coefficient.
    OddCoeff(EtaQuotient),
}

/// Second-component classifier.
#[derive(Clone, Copy, Debug)]
pub enum PartB {
    /// Positive squares and doubled squares.
    SquareOrTwiceSquare,
    /// Three times a positive square.
    ThreeTimesSquare,
}

impl PartB {
    fn contains(self, v: u64) -> bool {
        match self {
            PartB::SquareOrTwiceSquare => is_s_square(v),
            PartB::ThreeTimesSquare => v >= 3 && v % 3 == 0 && is_square(v / 3),
        }
    }
}

/// Count pairs (m, s) with m in the first class, s in the second, m + s = target.
#[derive(Clone, Debug)]
pub struct RepCountQuery {
    pub target: u64,
    pub part_a: PartA,
    pub part_b: PartB,
}

pub fn rep_count(query: &RepCountQuery) -> Result<u64, Error> {
    let n = query.target;
    let odd_table: Option<Vec<bool>> = match &query.part_a {
        PartA::GenPentagonal => None,
        PartA::OddCoeff(eta) => {
            let s = eta.series(CoefficientRing::ModInt(2), n as usize + 1)?;
            Some((0..=n as usize).map(|k| s.coeff(k) == Value::Mod(1)).collect())
        }
    };
    let in_a = |m: u64| match &odd_table {
        None => is_gen_pentagonal(m),
        Some(t) => t[m as usize],
    };
    Ok((0..=n).filter(|&m| in_a(m) && query.part_b.contains(n - m)).count() as u64)
}

/// Parity check: the number of representations of n as a generalized
/// pentagonal number plus a square or doubled square is odd exactly when n
/// is an odd generalized pentagonal number. Scanned for 1 <= n <= nmax.
pub fn verify_merca(nmax: u64) -> Result<VerifyReport, Error> {
    let id = "merca-parity";
    for n in 1..=nmax {
        let count = rep_count(&RepCountQuery {
            target: n,
            part_a: PartA::GenPentagonal,
            part_b: PartB::SquareOrTwiceSquare,
        })?;
        let expected = n % 2 == 1 && is_gen_pentagonal(n);
        if (count % 2 == 1) != expected {
            return Ok(VerifyReport::fail(id, nmax as usize, None, n as usize, count, expected));
        }
    }
    Ok(VerifyReport::pass(id, nmax as usize, None))
}

/// Two checks in one scan: the analogous parity statement with squares and
/// tripled squares (odd exactly when n = t(3t-1)/2 with t odd), and the
/// mod-4 relation Q(n) = v(n) + 2 w(n) with v the pentagonal indicator and
/// w the pentagonal-plus-tripled-square count.
pub fn verify_pent_plus_3square(nmax: u64) -> Result<VerifyReport, Error> {
    let id = "pent-3square-parity";
    let q_table = distinct_table(nmax as usize);
    for n in 0..=nmax {
        let w = rep_count(&RepCountQuery {
            target: n,
            part_a: PartA::GenPentagonal,
            part_b: PartB::ThreeTimesSquare,
        })?;
        if n >= 1 {
            let squares = (1..)
                .take_while(|k| k * k <= n)
                .filter(|k| is_gen_pentagonal(n - k * k))
                .count() as u64;
            let total = squares + w;
            let expected = matches!(gen_pentagonal_param(n), Some(t) if t.rem_euclid(2) == 1);
            if (total % 2 == 1) != expected {
                return Ok(VerifyReport::fail(id, nmax as usize, None, n as usize, total, expected));
            }
        }
        let v = u64::from(is_gen_pentagonal(n));
        let lhs = (&q_table[n as usize] % BigInt::from(4) + BigInt::from(4)) % BigInt::from(4);
        let rhs = BigInt::from((v + 2 * w) % 4);
        if lhs != rhs {
            return Ok(VerifyReport::fail(id, nmax as usize, Some(4), n as usize, lhs, rhs));
        }
    }
    Ok(VerifyReport::pass(id, nmax as usize, Some(4)))
}

fn mod9_table(expr: &str, len: usize) -> Result<Vec<u64>, Error> {
    let s = expr.parse::<EtaQuotient>()?.series(CoefficientRing::ModInt(9), len)?;
    Ok((0..len)
        .map(|k| match s.coeff(k) {
            Value::Mod(v) => v,
            _ => unreachable!(),
        })
        .collect())
}

/// The two bipartition equivalences mod 9: the signed distinct-parts count
/// over non-multiples of 3 vanishes with the plain bipartition count, and
/// the 3-regular-first-component bipartition count vanishes exactly off the
/// generalized pentagonal numbers.
pub fn bipartition_checks(nmax: u64) -> Result<VerifyReport, Error> {
    let id = "bipartition-mod9";
    let len = nmax as usize + 1;
    let ds = mod9_table("f1/f3", len)?;
    let p2 = mod9_table("1/f1^2", len)?;
    let p23 = mod9_table("f3/f1^2", len)?;
    for n in 0..len {
        if (ds[n] == 0) != (p2[n] == 0) {
            return Ok(VerifyReport::fail(id, nmax as usize, Some(9), n, ds[n], p2[n]));
        }
        let expected = !is_gen_pentagonal(n as u64);
        if (p23[n] == 0) != expected {
            return Ok(VerifyReport::fail(id, nmax as usize, Some(9), n, p23[n], expected));
        }
    }
    Ok(VerifyReport::pass(id, nmax as usize, Some(9)))
}

/// Partition counts with parts restricted by a predicate, by the standard
/// coin-change accumulation.
fn restricted_partition_table(nmax: usize, allowed: impl Fn(u64) -> bool) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); nmax + 1];
    c[0] = BigInt::from(1);
    for part in 1..=nmax {
        if allowed(part as u64) {
            for n in part..=nmax {
                let (lo, hi) = c.split_at_mut(n);
                hi[0] += &lo[n - part];
            }
        }
    }
    c
}

/// Partitions of n into parts not congruent to 0, +-a mod 9.
pub fn p_a9_table(a: u64, nmax: usize) -> Vec<BigInt> {
    restricted_partition_table(nmax, |part| {
        let r = part % 9;
        r != 0 && r != a % 9 && r != (9 - a % 9) % 9
    })
}

/// Signed distinct-parts counts over parts not divisible by 3 (even-length
/// partitions minus odd-length ones), read from f1/f3.
pub fn d_s_table(nmax: usize) -> Vec<BigInt> {
    eta_table("f1/f3", nmax + 1).expect("fixed expression parses")
}

/// The three dissection identities tying the signed counts to restricted
/// partition functions, plus the sign pattern they force by residue class:
/// D(3n) = p(n | parts != 0,+-4 mod 9), D(3n+1) = -p(n | != 0,+-2),
/// D(3n+2) = -p(n | != 0,+-1).
pub fn d_s_identities(nmax: u64) -> Result<VerifyReport, Error> {
    let id = "ds-3dissection";
    let len = nmax as usize + 1;
    let ds = d_s_table(nmax as usize);
    let comp = len.div_ceil(3);
    let p4 = p_a9_table(4, comp);
    let p2 = p_a9_table(2, comp);
    let p1 = p_a9_table(1, comp);
    for n in 0..len {
        let k = n / 3;
        let expected = match n % 3 {
            0 => p4[k].clone(),
            1 => -p2[k].clone(),
            _ => -p1[k].clone(),
        };
        if ds[n] != expected {
            return Ok(VerifyReport::fail(id, nmax as usize, None, n, &ds[n], expected));
        }
        let sign_ok = match n % 3 {
            0 => ds[n] >= BigInt::zero(),
            _ => ds[n] <= BigInt::zero(),
        };
        if !sign_ok {
            return Ok(VerifyReport::fail(id, nmax as usize, None, n, &ds[n], "sign pattern"));
        }
    }
    Ok(VerifyReport::pass(id, nmax as usize, None))
}

/// Every corollary scan at the given bound, in a fixed order.
pub fn corollary_suite(nmax: u64) -> Result<Vec<VerifyReport>, Error> {
    Ok(vec![
        verify_merca(nmax.min(2000))?,
        verify_pent_plus_3square(nmax.min(2000))?,
        bipartition_checks(nmax)?,
        d_s_identities(nmax)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagonal_classifier() {
        assert_eq!(gen_pentagonal_param(0), Some(0));
        assert_eq!(gen_pentagonal_param(1), Some(1));
        assert_eq!(gen_pentagonal_param(2), Some(-1));
        assert_eq!(gen_pentagonal_param(5), Some(2));
        assert_eq!(gen_pentagonal_param(7), Some(-2));
        assert_eq!(gen_pentagonal_param(6), None);
        for t in -40i64..=40 {
            let n = (t * (3 * t - 1) / 2) as u64;
            assert_eq!(gen_pentagonal_param(n), Some(t), "n = {}", n);
        }
    }

    #[test]
    fn s_square_classifier() {
        assert!(is_s_square(8));
        assert!(is_s_square(9));
        assert!(is_s_square(2));
        assert!(!is_s_square(6));
        assert!(!is_s_square(0));
    }

    #[test]
    fn partition_values() {
        assert_eq!(partition_count(0), BigInt::from(1));
        assert_eq!(partition_count(55), BigInt::from(451276));
        assert_eq!(partition_count(60), BigInt::from(966467));
    }

    #[test]
    fn partition_table_matches_recurrence_to_5000() {
        // independent oracle: the classical alternating recurrence over
        // generalized pentagonal numbers
        let nmax = 5000;
        let table = partition_table(nmax);
        let mut p = vec![BigInt::zero(); nmax + 1];
        p[0] = BigInt::from(1);
        for n in 1..=nmax {
            let mut acc = BigInt::zero();
            let mut t = 1usize;
            loop {
                let g1 = t * (3 * t - 1) / 2;
                let g2 = t * (3 * t + 1) / 2;
                if g1 > n && g2 > n {
                    break;
                }
                for g in [g1, g2] {
                    if g <= n {
                        if t % 2 == 1 {
                            acc += &p[n - g];
                        } else {
                            acc -= &p[n - g];
                        }
                    }
                }
                t += 1;
            }
            p[n] = acc;
        }
        assert_eq!(table, p);
    }

    #[test]
    fn distinct_values() {
        assert_eq!(distinct_count(0), BigInt::from(1));
        assert_eq!(distinct_count(5), BigInt::from(3));
    }

    #[test]
    fn distinct_parity_is_pentagonal() {
        let q = distinct_table(2000);
        for (n, v) in q.iter().enumerate() {
            let odd = v % BigInt::from(2) != BigInt::zero();
            assert_eq!(odd, is_gen_pentagonal(n as u64), "Q({})", n);
        }
    }

    #[test]
    fn representation_counts_for_partition_parity() {
        let odd_p = PartA::OddCoeff("1/f1".parse().unwrap());
        for (target, expected) in [(55u64, 8u64), (60, 6), (53, 9)] {
            let q = RepCountQuery {
                target,
                part_a: odd_p.clone(),
                part_b: PartB::SquareOrTwiceSquare,
            };
            assert_eq!(rep_count(&q).unwrap(), expected, "target {}", target);
        }
    }

    #[test]
    fn merca_small() {
        assert!(verify_merca(300).unwrap().passed());
        // n = 1 decomposes only as 0 + 1
        let q = RepCountQuery {
            target: 1,
            part_a: PartA::GenPentagonal,
            part_b: PartB::SquareOrTwiceSquare,
        };
        assert_eq!(rep_count(&q).unwrap(), 1);
    }

    #[test]
    fn pent_3square_small() {
        assert!(verify_pent_plus_3square(300).unwrap().passed());
    }

    #[test]
    fn bipartition_small() {
        assert!(bipartition_checks(400).unwrap().passed());
        // spot value: bipartitions of 2
        let p2 = eta_table("1/f1^2", 3).unwrap();
        assert_eq!(p2[2], BigInt::from(5));
    }

    #[test]
    fn ds_values_and_identities() {
        let ds = d_s_table(60);
        assert_eq!(ds[60], BigInt::from(224));
        assert_eq!(ds[1], BigInt::from(-1));
        let p49 = p_a9_table(4, 20);
        assert_eq!(p49[20], BigInt::from(224));
        let p29 = p_a9_table(2, 1);
        assert_eq!(p29[0], BigInt::from(1));
        assert!(d_s_identities(400).unwrap().passed());
    }
}
