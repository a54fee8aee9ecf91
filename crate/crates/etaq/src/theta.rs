//! Lattice theta series: the hexagonal-lattice counting function a(q), the
//! quartic Gaussian-integer families feeding the weight-5 forms, the 96
//! quadratic families feeding the weight-3 forms, and the assembled S-forms.
//!
//! Every family is a finite list of affine lattice forms (u(m), v(n)) with a
//! Gaussian-unit coefficient; the series sums coeff * (u + iv)^t q^(u^2+v^2)
//! over all integer (m, n) with the exponent inside the truncation. The
//! enumeration bound is exact, not heuristic. Fractional multipliers in the
//! surrounding identities are always handled by the callers in
//! denominator-cleared form; a family can be flagged `halved` to record that
//! its raw sum is twice the intended value.

use num_bigint::BigInt;

use crate::error::Error;
use crate::hecke::GaussI128;
use crate::ring::{CoefficientRing, GaussInt, Value};
use crate::series::TruncatedSeries;

/// u(m) = slope * m + offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub slope: i64,
    pub offset: i64,
}

impl AffineForm {
    pub fn new(slope: i64, offset: i64) -> Self {
        assert!(slope != 0, "lattice form slope must be nonzero");
        AffineForm { slope, offset }
    }

    /// All values u = slope*m + offset with u^2 <= bound.
    fn values(&self, bound: i64) -> impl Iterator<Item = i64> {
        let limit = crate::arith::isqrt(bound.max(0) as u64) as i64;
        let s = self.slope;
        let o = self.offset;
        let lo = (-limit - o).div_euclid(s.abs());
        let hi = (limit - o).div_euclid(s.abs());
        (lo..=hi + 1)
            .map(move |m| s.abs() * m + o)
            .filter(move |u| u * u <= bound)
    }

    fn matches(&self, v: i64) -> bool {
        (v - self.offset).rem_euclid(self.slope.abs()) == 0
    }
}

/// A Gaussian unit (or zero) coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussUnit {
    Zero,
    One,
    MinusOne,
    I,
    MinusI,
}

impl GaussUnit {
    pub fn to_gauss(self) -> GaussI128 {
        match self {
            GaussUnit::Zero => GaussI128::ZERO,
            GaussUnit::One => GaussI128::new(1, 0),
            GaussUnit::MinusOne => GaussI128::new(-1, 0),
            GaussUnit::I => GaussI128::new(0, 1),
            GaussUnit::MinusI => GaussI128::new(0, -1),
        }
    }

    pub fn conj(self) -> Self {
        match self {
            GaussUnit::I => GaussUnit::MinusI,
            GaussUnit::MinusI => GaussUnit::I,
            other => other,
        }
    }
}

/// One affine lattice term of a theta family.
#[derive(Clone, Copy, Debug)]
pub struct ThetaTerm {
    pub u: AffineForm,
    pub v: AffineForm,
    pub coeff: GaussUnit,
}

/// A finite sum of affine lattice forms raised to a common power.
#[derive(Clone, Debug)]
pub struct ThetaFamily {
    pub terms: Vec<ThetaTerm>,
    /// Exponent t applied to (u + iv); 2 for the weight-3 families, 4 for
    /// the weight-5 ones.
    pub power: u32,
    /// The intended series is half the raw lattice sum. Consumers verify in
    /// cleared form: 2 * target == raw sum.
    pub halved: bool,
}

impl ThetaFamily {
    fn term_sum(&self, trunc: usize) -> Vec<GaussI128> {
        let bound = (trunc as i64) - 1;
        let mut acc = vec![GaussI128::ZERO; trunc];
        for term in &self.terms {
            if term.coeff == GaussUnit::Zero {
                continue;
            }
            let c = term.coeff.to_gauss();
            for u in term.u.values(bound) {
                let rem = bound - u * u;
                for v in term.v.values(rem) {
                    let e = (u * u + v * v) as usize;
                    let val = GaussI128::new(u as i128, v as i128).pow(self.power);
                    acc[e] = acc[e].add(c.mul(val));
                }
            }
        }
        acc
    }

    /// Raw lattice sum as a Gaussian-integer series (no halving applied).
    pub fn series(&self, trunc: usize) -> Result<TruncatedSeries, Error> {
        let acc = self.term_sum(trunc);
        let terms: Vec<(usize, Value)> = acc
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(e, v)| {
                (e, Value::Gauss(GaussInt { re: BigInt::from(v.re), im: BigInt::from(v.im) }))
            })
            .collect();
        TruncatedSeries::from_terms(CoefficientRing::GaussianInt, trunc, &terms)
    }

    /// Coefficient at a single exponent, by direct enumeration.
    pub fn coeff_at(&self, exponent: u64) -> GaussI128 {
        let e = exponent as i64;
        let mut acc = GaussI128::ZERO;
        for term in &self.terms {
            if term.coeff == GaussUnit::Zero {
                continue;
            }
            let c = term.coeff.to_gauss();
            for u in term.u.values(e) {
                let rem = (e - u * u) as u64;
                let w = crate::arith::isqrt(rem) as i64;
                if w * w != rem as i64 {
                    continue;
                }
                let candidates = if w == 0 { vec![0] } else { vec![w, -w] };
                for v in candidates {
                    if term.v.matches(v) {
                        let val = GaussI128::new(u as i128, v as i128).pow(self.power);
                        acc = acc.add(c.mul(val));
                    }
                }
            }
        }
        acc
    }
}

/// The 96 (u-offset, v-offset) pairs of the quadratic family list; both
/// slopes are 30.
pub const UV96: [(i64, i64); 96] = [
    (-23, 2), (-23, 4), (-23, 12), (-23, 14), (-23, 22), (-23, 24),
    (-21, 2), (-21, 4), (-21, 14), (-21, 22),
    (-13, 2), (-13, 4), (-13, 12), (-13, 14), (-13, 22), (-13, 24),
    (-11, 2), (-11, 4), (-11, 12), (-11, 14), (-11, 22), (-11, 24),
    (-3, 2), (-3, 4), (-3, 14), (-3, 22),
    (-1, 2), (-1, 4), (-1, 12), (-1, 14), (-1, 22), (-1, 24),
    (1, 0), (1, 2), (1, 4), (1, 10), (1, 12), (1, 14), (1, 20), (1, 22), (1, 24),
    (3, 2), (3, 4), (3, 10), (3, 14), (3, 20), (3, 22),
    (5, 2), (5, 4), (5, 12), (5, 14), (5, 22), (5, 24),
    (11, 0), (11, 2), (11, 4), (11, 10), (11, 12), (11, 14), (11, 20), (11, 22), (11, 24),
    (13, 0), (13, 2), (13, 4), (13, 10), (13, 12), (13, 14), (13, 20), (13, 22), (13, 24),
    (15, 2), (15, 4), (15, 14), (15, 22),
    (21, 2), (21, 4), (21, 10), (21, 14), (21, 20), (21, 22),
    (23, 0), (23, 2), (23, 4), (23, 10), (23, 12), (23, 14), (23, 20), (23, 22), (23, 24),
    (25, 2), (25, 4), (25, 12), (25, 14), (25, 22), (25, 24),
];

use GaussUnit::{MinusI as J, MinusOne as N, One as P, Zero as O, I};

/// Unit coefficients assembling the first weight-3 form from the 96 families.
pub const ALPHA: [GaussUnit; 96] = [
    I, I, N, J, J, P, O, N, N, O, J, J, N, I, I, P, O, I, O, J, O, P, P, N, N, P, O, J, O,
    I, O, P, P, I, J, I, N, I, J, J, N, N, O, P, O, P, N, I, I, P, J, J, N, P, J, I, J, N,
    J, I, I, N, N, J, O, J, P, O, I, I, O, N, P, P, N, P, P, N, P, N,
    P, N, I, O, I, P, O, J, J, O, J, J, P, I, I, N,
];

/// Unit coefficients assembling the conjugate of the first weight-3 form.
pub const BETA: [GaussUnit; 96] = [
    J, O, P, O, I, O, P, P, P, P, I, O, P, O, J, O, I, J, N, I, J, N, N, O, O, N, J, I, N,
    J, I, N, P, O, I, I, O, J, J, O, P, P, N, P, N, P, P, I, I, P, J, J, N, P, O, J, J, O,
    I, I, O, P, N, I, I, J, N, J, I, J, P, N, P, P, N, O, N, N, N,
    N, O, N, J, J, I, N, I, J, I, P, J, J, P, I, I, N,
];

/// Unit coefficients assembling the second weight-3 form.
pub const GAMMA: [GaussUnit; 96] = [
    J, J, N, I, I, P, O, N, N, O, I, I, N, J, J, P, O, J, O, I, O, P, P, N, N, P, O, I, O,
    J, O, P, P, J, I, J, N, J, I, I, N, N, O, P, O, P, N, J, J, P, I, I, N, P, I, J, I,
    N, I, J, J, N, N, I, O, I, P, O, J, J, O, N, P, P, N, P, P, N,
    P, N, P, N, J, O, J, P, O, I, I, O, I, I, P, J, J, N,
];

/// Unit coefficients assembling the conjugate of the second weight-3 form.
pub const DELTA: [GaussUnit; 96] = [
    I, O, P, O, J, O, P, P, P, P, J, O, P, O, I, O, J, I, N, J, I, N, N, O, O, N, I, J, N, I,
    J, N, P, O, J, J, O, I, I, O, P, P, N, P, N, P, P, J, J, P, I, I, N, P, O, I, I, O, J, J,
    O, P, N, J, J, I, N, I, J, I, P, N, P, P, N, O, N, N, N, N, O,
    N, I, I, J, N, J, I, J, P, I, I, P, J, J, N,
];

/// The j-th quadratic lattice family (1-based).
pub fn quadratic_family(j: usize) -> Result<ThetaFamily, Error> {
    if !(1..=96).contains(&j) {
        return Err(Error::UnknownTheta(format!("Hj{}", j)));
    }
    let (uo, vo) = UV96[j - 1];
    Ok(ThetaFamily {
        terms: vec![ThetaTerm {
            u: AffineForm::new(30, uo),
            v: AffineForm::new(30, vo),
            coeff: GaussUnit::One,
        }],
        power: 2,
        halved: false,
    })
}

fn quartic_family(terms: &[(i64, i64, GaussUnit)]) -> ThetaFamily {
    ThetaFamily {
        terms: terms
            .iter()
            .map(|&(uo, vo, c)| ThetaTerm {
                u: AffineForm::new(6, uo),
                v: AffineForm::new(6, vo),
                coeff: c,
            })
            .collect(),
        power: 4,
        halved: false,
    }
}

fn combined_96(units: &[GaussUnit; 96]) -> ThetaFamily {
    ThetaFamily {
        terms: UV96
            .iter()
            .zip(units)
            .filter(|(_, &c)| c != GaussUnit::Zero)
            .map(|(&(uo, vo), &c)| ThetaTerm {
                u: AffineForm::new(30, uo),
                v: AffineForm::new(30, vo),
                coeff: c,
            })
            .collect(),
        power: 2,
        halved: false,
    }
}

/// Builtin families by name: `H3`, `H4`, `H7`, `H8` (quartic), `Hj1`..`Hj96`
/// (quadratic), the assembled forms `S1`, `S2`, `S3`, `S3bar`, `S4`,
/// `S4bar`, and `QF46` (the halved odd+even-i square family).
pub fn builtin_family(name: &str) -> Result<ThetaFamily, Error> {
    match name {
        "H3" => Ok(quartic_family(&[(1, 0, P)])),
        "H4" => Ok(quartic_family(&[(3, -2, P)])),
        "H7" => Ok(quartic_family(&[(1, -2, P)])),
        "H8" => Ok(quartic_family(&[(1, 2, P)])),
        "S1" => Ok(quartic_family(&[(1, 0, P), (3, -2, N), (1, -2, I), (1, 2, J)])),
        "S2" => Ok(quartic_family(&[(1, 0, P), (3, -2, N), (1, -2, J), (1, 2, I)])),
        "S3" => Ok(combined_96(&ALPHA)),
        "S3bar" => Ok(combined_96(&BETA)),
        "S4" => Ok(combined_96(&GAMMA)),
        "S4bar" => Ok(combined_96(&DELTA)),
        "QF46" => Ok(ThetaFamily {
            terms: vec![ThetaTerm {
                u: AffineForm::new(2, 1),
                v: AffineForm::new(2, 0),
                coeff: GaussUnit::One,
            }],
            power: 2,
            halved: true,
        }),
        other => {
            if let Some(rest) = other.strip_prefix("Hj") {
                let j: usize = rest
                    .parse()
                    .map_err(|_| Error::UnknownTheta(other.to_string()))?;
                return quadratic_family(j);
            }
            Err(Error::UnknownTheta(other.to_string()))
        }
    }
}

/// Expand a builtin theta series to a Gaussian-integer truncated series.
pub fn builtin_theta(name: &str, trunc: usize) -> Result<TruncatedSeries, Error> {
    builtin_family(name)?.series(trunc)
}

/// The hexagonal-lattice counting series: sum over (m, n) of q^(m^2+mn+n^2).
pub fn borwein_a(trunc: usize, ring: CoefficientRing) -> Result<TruncatedSeries, Error> {
    let bound = (trunc as i64) - 1;
    let mut counts = vec![0u64; trunc];
    // m^2 + mn + n^2 = (m + n/2)^2 + 3n^2/4, so |n| and |m| are bounded by
    // 2 sqrt(bound / 3) and the loop below covers every lattice point
    let nmax = 2 * crate::arith::isqrt((bound.max(0) as u64) / 3 + 1) as i64 + 2;
    for n in -nmax..=nmax {
        for m in -nmax..=nmax {
            let e = m * m + m * n + n * n;
            if (0..=bound).contains(&e) {
                counts[e as usize] += 1;
            }
        }
    }
    let terms: Vec<(usize, Value)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| (e, Value::Int(BigInt::from(c))))
        .collect();
    TruncatedSeries::from_terms(ring, trunc, &terms)
}
