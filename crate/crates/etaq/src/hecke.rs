//! Prime-power Hecke recurrences over small Gaussian integers.
//!
//! Coefficients of the weight-5 and weight-3 theta forms at prime powers
//! below the ranges used here stay far inside i128, so this module works with
//! a fixed-size Gaussian type instead of the arbitrary-precision one.

use serde::Serialize;

/// A Gaussian integer with i128 parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaussI128 {
    pub re: i128,
    pub im: i128,
}

impl GaussI128 {
    pub const ZERO: GaussI128 = GaussI128 { re: 0, im: 0 };
    pub const ONE: GaussI128 = GaussI128 { re: 1, im: 0 };

    pub fn new(re: i128, im: i128) -> Self {
        GaussI128 { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(self) -> Self {
        GaussI128 { re: self.re, im: -self.im }
    }

    pub fn add(self, o: Self) -> Self {
        GaussI128 { re: self.re + o.re, im: self.im + o.im }
    }

    pub fn sub(self, o: Self) -> Self {
        GaussI128 { re: self.re - o.re, im: self.im - o.im }
    }

    pub fn mul(self, o: Self) -> Self {
        GaussI128 {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    pub fn scale(self, k: i128) -> Self {
        GaussI128 { re: self.re * k, im: self.im * k }
    }

    pub fn pow(self, e: u32) -> Self {
        let mut acc = GaussI128::ONE;
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Both parts reduced into [0, m).
    pub fn reduce(self, m: i128) -> Self {
        GaussI128 { re: self.re.rem_euclid(m), im: self.im.rem_euclid(m) }
    }
}

/// Local data at a prime: the coefficient at p, the character value, and the
/// weight twist (p^4 for the weight-5 form, p^2 for weight 3).
#[derive(Clone, Copy, Debug)]
pub struct HeckeLocal {
    pub p: u64,
    pub ap: GaussI128,
    pub chi: i8,
    pub twist: i128,
}

impl HeckeLocal {
    /// Weight-5 local data: chi(p) = +1 for p = 1 mod 4, -1 for p = 3 mod 4.
    pub fn weight5(p: u64, ap: GaussI128) -> Self {
        let chi = if p % 4 == 1 { 1 } else { -1 };
        HeckeLocal { p, ap, chi, twist: (p as i128).pow(4) }
    }

    /// Weight-3 local data: chi(p) = +1 for p = 1,3,7,9 mod 20, else -1.
    pub fn weight3(p: u64, ap: GaussI128) -> Self {
        let chi = if matches!(p % 20, 1 | 3 | 7 | 9) { 1 } else { -1 };
        HeckeLocal { p, ap, chi, twist: (p as i128).pow(2) }
    }
}

/// k-th term of the two-term recurrence with seeds 1 and a_p:
/// a(p^(k+1)) = a(p^k) a(p) - chi(p) p^w a(p^(k-1)).
pub fn hecke_power(local: &HeckeLocal, k: u32) -> GaussI128 {
    let mut prev = GaussI128::ONE;
    if k == 0 {
        return prev;
    }
    let mut cur = local.ap;
    for _ in 1..k {
        let next = cur
            .mul(local.ap)
            .sub(prev.scale(local.chi as i128 * local.twist));
        prev = cur;
        cur = next;
    }
    cur
}

/// The recurrence orbit reduced mod m: a(p^0), a(p^1), ..., a(p^(len-1)).
pub fn hecke_orbit_mod(local: &HeckeLocal, m: i128, len: usize) -> Vec<GaussI128> {
    let mut out = Vec::with_capacity(len);
    let ap = local.ap.reduce(m);
    let twist = (local.chi as i128 * local.twist).rem_euclid(m);
    let mut prev = GaussI128::ONE;
    let mut cur = ap;
    for k in 0..len {
        out.push(if k == 0 { prev } else { cur });
        if k >= 1 {
            let next = cur.mul(ap).sub(prev.scale(twist)).reduce(m);
            prev = cur;
            cur = next;
        }
    }
    out
}
