//! Triple-product symbols J_{a,m} = (q^a, q^(m-a), q^m; q^m)_inf and their
//! barred variants (-q^a, -q^(m-a), q^m; q^m)_inf.
//!
//! Each (x; q^m)_inf factor is expanded by the incremental binomial product
//! over (1 - x q^(m t)); slower than a theta shortcut but obviously correct,
//! and these symbols are never the bottleneck.

use std::fmt;

use crate::error::Error;
use crate::ring::CoefficientRing;
use crate::series::{Store, TruncatedSeries};

/// The symbol J_{a,m} (or the barred form when `barred` is set).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JSymbol {
    pub a: u32,
    pub m: u32,
    pub barred: bool,
}

impl JSymbol {
    pub fn new(a: u32, m: u32) -> Result<Self, Error> {
        if a == 0 || a >= m {
            return Err(Error::Parse(format!("need 0 < a < m, got a={}, m={}", a, m)));
        }
        Ok(JSymbol { a, m, barred: false })
    }

    pub fn barred(a: u32, m: u32) -> Result<Self, Error> {
        Ok(JSymbol { barred: true, ..Self::new(a, m)? })
    }

    /// Expand the triple product to a truncated series.
    pub fn series(&self, ring: CoefficientRing, trunc: usize) -> Result<TruncatedSeries, Error> {
        let mut s = TruncatedSeries::one(ring, trunc)?;
        let (a, m) = (self.a as usize, self.m as usize);
        // the three product families: q^(a + tm), q^(m - a + tm), q^(m + tm)
        for (start, flip_sign) in [(a, self.barred), (m - a, self.barred), (m, false)] {
            let mut d = start;
            while d < trunc {
                binomial_pass(&mut s, d, flip_sign);
                d += m;
            }
        }
        Ok(s)
    }
}

impl fmt::Display for JSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "Jbar({},{})", self.a, self.m)
        } else {
            write!(f, "J({},{})", self.a, self.m)
        }
    }
}

/// Multiply in place by (1 - q^d), or by (1 + q^d) when `plus` is set.
fn binomial_pass(series: &mut TruncatedSeries, d: usize, plus: bool) {
    debug_assert!(d >= 1);
    match &mut series.store {
        Store::Int(c) => {
            for n in (d..c.len()).rev() {
                let (lo, hi) = c.split_at_mut(n);
                if plus {
                    hi[0] += &lo[n - d];
                } else {
                    hi[0] -= &lo[n - d];
                }
            }
        }
        Store::Mod { m, c } => {
            let m = *m;
            for n in (d..c.len()).rev() {
                c[n] = if plus {
                    crate::ring::mod_add(c[n], c[n - d], m)
                } else {
                    crate::ring::mod_sub(c[n], c[n - d], m)
                };
            }
        }
        Store::Gauss(c) => {
            for n in (d..c.len()).rev() {
                let (lo, hi) = c.split_at_mut(n);
                let src = &lo[n - d];
                if plus {
                    hi[0].re += &src.re;
                    hi[0].im += &src.im;
                } else {
                    hi[0].re -= &src.re;
                    hi[0].im -= &src.im;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::EtaQuotient;
    use crate::ring::Value;

    fn eta(expr: &str, n: usize) -> TruncatedSeries {
        expr.parse::<EtaQuotient>()
            .unwrap()
            .series(CoefficientRing::ExactInt, n)
            .unwrap()
    }

    #[test]
    fn constant_term_is_one() {
        for (a, m, barred) in [(12, 27, false), (6, 16, true), (1, 12, true)] {
            let sym = if barred { JSymbol::barred(a, m) } else { JSymbol::new(a, m) }.unwrap();
            let s = sym.series(CoefficientRing::ExactInt, 40).unwrap();
            assert_eq!(s.coeff(0), Value::int(1), "{}", sym);
        }
    }

    #[test]
    fn bad_parameters_rejected() {
        assert!(JSymbol::new(0, 5).is_err());
        assert!(JSymbol::new(5, 5).is_err());
    }

    #[test]
    fn three_dissection_of_f1() {
        // f1 = J(12,27) - q J(6,27) - q^2 J(3,27)
        let n = 500;
        let j12 = JSymbol::new(12, 27).unwrap().series(CoefficientRing::ExactInt, n).unwrap();
        let j6 = JSymbol::new(6, 27).unwrap().series(CoefficientRing::ExactInt, n).unwrap();
        let j3 = JSymbol::new(3, 27).unwrap().series(CoefficientRing::ExactInt, n).unwrap();
        let rhs = j12.sub(&j6.shift(1)).unwrap().sub(&j3.shift(2)).unwrap();
        assert_eq!(rhs, eta("f1", n));
    }

    #[test]
    fn two_dissection_of_f1_level_12() {
        // f1 = Jbar(5,12) - q Jbar(1,12)
        let n = 500;
        let a = JSymbol::barred(5, 12).unwrap().series(CoefficientRing::ExactInt, n).unwrap();
        let b = JSymbol::barred(1, 12).unwrap().series(CoefficientRing::ExactInt, n).unwrap();
        assert_eq!(a.sub(&b.shift(1)).unwrap(), eta("f1", n));
    }

    #[test]
    fn dissected_f1_components_are_triple_products() {
        // undilating the 3-dissection: the components of f1 split by
        // exponent mod 3 are J(4,9), -J(2,9), -J(1,9)
        let n = 600;
        let comps = eta("f1", n).dissect(3).components;
        let m = comps[0].trunc();
        let j49 = JSymbol::new(4, 9).unwrap().series(CoefficientRing::ExactInt, m).unwrap();
        let j29 = JSymbol::new(2, 9).unwrap().series(CoefficientRing::ExactInt, m).unwrap();
        let j19 = JSymbol::new(1, 9).unwrap().series(CoefficientRing::ExactInt, m).unwrap();
        assert_eq!(comps[0], j49);
        assert_eq!(comps[1], j29.neg());
        assert_eq!(comps[2], j19.neg());
    }
}
