//! Eta quotients: parsing, normalization, and expansion into truncated
//! series.
//!
//! Expansion never forms a dense product with a dense (q^j;q^j)_inf series.
//! Each factor f_j^(+-1) is applied as one in-place pass using the pentagonal
//! expansion f_1 = sum over t of (-1)^t q^(t(3t-1)/2), which has O(sqrt(N/j))
//! nonzero terms. That keeps a full eta-quotient expansion at N = 15000 cheap
//! even over exact integers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::ring::{mod_add, mod_sub, CoefficientRing};
use crate::series::{Store, TruncatedSeries};

/// A normalized eta quotient: product over (dilation j, exponent n_j) with
/// distinct j and nonzero exponents, sorted by j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    factors: Vec<(u32, i32)>,
}

impl EtaQuotient {
    /// Build from raw (j, exponent) pairs, merging repeated j and dropping
    /// zero exponents.
    pub fn new(raw: &[(u32, i32)]) -> Result<Self, Error> {
        let mut merged: BTreeMap<u32, i64> = BTreeMap::new();
        for &(j, e) in raw {
            if j == 0 {
                return Err(Error::Parse("dilation index must be positive".into()));
            }
            *merged.entry(j).or_insert(0) += e as i64;
        }
        let mut factors = Vec::new();
        for (j, e) in merged {
            if e == 0 {
                continue;
            }
            let e = i32::try_from(e)
                .map_err(|_| Error::Parse(format!("merged exponent overflow at f{}", j)))?;
            factors.push((j, e));
        }
        Ok(EtaQuotient { factors })
    }

    /// The unit quotient (empty product).
    pub fn unit() -> Self {
        EtaQuotient { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[(u32, i32)] {
        &self.factors
    }

    /// Exponent of f_j (zero when absent).
    pub fn exponent(&self, j: u32) -> i32 {
        self.factors
            .iter()
            .find(|&&(k, _)| k == j)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// Product of two quotients.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        let mut raw = self.factors.clone();
        raw.extend_from_slice(&other.factors);
        EtaQuotient::new(&raw)
    }

    /// Expand to a truncated series over the given ring.
    pub fn series(&self, ring: CoefficientRing, trunc: usize) -> Result<TruncatedSeries, Error> {
        let mut s = TruncatedSeries::one(ring, trunc)?;
        for &(j, e) in &self.factors {
            apply_eta_factor(&mut s, j, e)?;
        }
        Ok(s)
    }
}

impl FromStr for EtaQuotient {
    type Err = Error;

    /// Grammar: factors `f<j>` with optional `^<exp>` (exp may be negative),
    /// or the unit factor `1`, joined by `*` and `/`. Examples: `f1`,
    /// `f1^5/f5`, `f4^2*f5^4/f1^2/f2`, `1/f1/f5`.
    fn from_str(text: &str) -> Result<Self, Error> {
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut raw: Vec<(u32, i32)> = Vec::new();
        let mut pos = 0usize;
        let mut sign = 1i32; // +1 multiply, -1 divide
        loop {
            // one factor: "1" or "f<j>[^[-]<e>]"
            if pos >= s.len() {
                return Err(Error::Parse("dangling operator".into()));
            }
            if s[pos] == '1' {
                pos += 1;
            } else if s[pos] == 'f' {
                pos += 1;
                let j = parse_uint(&s, &mut pos)?;
                if j == 0 {
                    return Err(Error::Parse("dilation index must be positive".into()));
                }
                let j = u32::try_from(j)
                    .map_err(|_| Error::Parse(format!("dilation index {} too large", j)))?;
                let mut e: i32 = 1;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    let mut exp_sign = 1i64;
                    if pos < s.len() && s[pos] == '-' {
                        exp_sign = -1;
                        pos += 1;
                    }
                    let v = parse_uint(&s, &mut pos)?;
                    e = i32::try_from(exp_sign * v as i64)
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                }
                raw.push((j, sign * e));
            } else {
                return Err(Error::Parse(format!(
                    "unexpected character `{}` at position {}",
                    s[pos], pos
                )));
            }
            if pos == s.len() {
                break;
            }
            sign = match s[pos] {
                '*' => 1,
                '/' => -1,
                c => return Err(Error::Parse(format!("expected `*` or `/`, found `{}`", c))),
            };
            pos += 1;
        }
        EtaQuotient::new(&raw)
    }
}

fn parse_uint(s: &[char], pos: &mut usize) -> Result<u64, Error> {
    let start = *pos;
    let mut v: u64 = 0;
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        v = v
            .checked_mul(10)
            .and_then(|v| v.checked_add(s[*pos] as u64 - '0' as u64))
            .ok_or_else(|| Error::Parse("number too large".into()))?;
        *pos += 1;
    }
    if *pos == start {
        return Err(Error::Parse("expected a number".into()));
    }
    Ok(v)
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self
            .factors
            .iter()
            .filter(|&&(_, e)| e > 0)
            .map(|&(j, e)| if e == 1 { format!("f{}", j) } else { format!("f{}^{}", j, e) })
            .collect();
        let den: Vec<String> = self
            .factors
            .iter()
            .filter(|&&(_, e)| e < 0)
            .map(|&(j, e)| if e == -1 { format!("f{}", j) } else { format!("f{}^{}", j, -e) })
            .collect();
        if num.is_empty() {
            write!(f, "1")?;
        } else {
            write!(f, "{}", num.join("*"))?;
        }
        for d in den {
            write!(f, "/{}", d)?;
        }
        Ok(())
    }
}

/// Generalized pentagonal offsets with their signs: (t(3t-1)/2 * j, negate)
/// for t = 1, -1, 2, -2, ... while the offset stays below `limit`, skipping
/// t = 0. The sign of the term is (-1)^t.
fn pentagonal_offsets(j: u64, limit: usize) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    let mut t: u64 = 1;
    loop {
        let mut pushed = false;
        for pent in [t * (3 * t - 1) / 2, t * (3 * t + 1) / 2] {
            if let Some(off) = pent.checked_mul(j) {
                if (off as usize) < limit && off <= usize::MAX as u64 {
                    out.push((off as usize, t % 2 == 1));
                    pushed = true;
                }
            }
        }
        if !pushed {
            return out;
        }
        t += 1;
    }
}

/// Multiply or divide a series in place by f_j^e.
pub(crate) fn apply_eta_factor(
    series: &mut TruncatedSeries,
    j: u32,
    e: i32,
) -> Result<(), Error> {
    let n = series.trunc();
    let offs = pentagonal_offsets(j as u64, n);
    for _ in 0..e.unsigned_abs() {
        if e > 0 {
            mul_pass(series, &offs);
        } else {
            div_pass(series, &offs);
        }
    }
    Ok(())
}

/// One multiplication pass by the pentagonal expansion of f_j. Descending
/// order lets the update run in place: indices below n are still untouched
/// inputs when c[n] is finalized.
fn mul_pass(series: &mut TruncatedSeries, offs: &[(usize, bool)]) {
    match &mut series.store {
        Store::Int(c) => {
            for nn in (0..c.len()).rev() {
                for &(d, neg) in offs {
                    if d > nn {
                        break;
                    }
                    let (lo, hi) = c.split_at_mut(nn);
                    if neg {
                        hi[0] -= &lo[nn - d];
                    } else {
                        hi[0] += &lo[nn - d];
                    }
                }
            }
        }
        Store::Mod { m, c } => {
            let m = *m;
            for nn in (0..c.len()).rev() {
                let mut v = c[nn];
                for &(d, neg) in offs {
                    if d > nn {
                        break;
                    }
                    v = if neg { mod_sub(v, c[nn - d], m) } else { mod_add(v, c[nn - d], m) };
                }
                c[nn] = v;
            }
        }
        Store::Gauss(c) => {
            for nn in (0..c.len()).rev() {
                for &(d, neg) in offs {
                    if d > nn {
                        break;
                    }
                    let (lo, hi) = c.split_at_mut(nn);
                    let src = &lo[nn - d];
                    if neg {
                        hi[0].re -= &src.re;
                        hi[0].im -= &src.im;
                    } else {
                        hi[0].re += &src.re;
                        hi[0].im += &src.im;
                    }
                }
            }
        }
    }
}

/// One division pass by f_j, i.e. multiplication by its inverse, via the
/// forward recurrence b_n = a_n - sum of signed b at lower indices.
fn div_pass(series: &mut TruncatedSeries, offs: &[(usize, bool)]) {
    match &mut series.store {
        Store::Int(c) => {
            for nn in 0..c.len() {
                for &(d, neg) in offs {
                    if d > nn {
                        break;
                    }
                    let (lo, hi) = c.split_at_mut(nn);
                    if neg {
                        hi[0] += &lo[nn - d];
                    } else {
                        hi[0] -= &lo[nn - d];
                    }
                }
            }
        }
        Store::Mod { m, c } => {
            let m = *m;
            for nn in 0..c.len() {
                let mut v = c[nn];
                for &(d, neg) in offs {
                    if d > nn {
                        break;
                    }
                    v = if neg { mod_add(v, c[nn - d], m) } else { mod_sub(v, c[nn - d], m) };
                }
                c[nn] = v;
            }
        }
        Store::Gauss(c) => {
            for nn in 0..c.len() {
                for &(d, neg) in offs {
                    if d > nn {
                        break;
                    }
                    let (lo, hi) = c.split_at_mut(nn);
                    let src = &lo[nn - d];
                    if neg {
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
}
