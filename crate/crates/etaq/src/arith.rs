//! Elementary arithmetic: deterministic primality, factorization by trial
//! division (inputs stay below ~2*10^5 in this crate), and the two quadratic
//! representations the vanishing predicates consume.

use serde::Serialize;

use crate::error::Error;

/// Integer square root.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).map_or(true, |s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |s| s <= n) {
        x += 1;
    }
    x
}

/// Trial-division primality.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Miller-Rabin with a fixed base set, deterministic for u64. Used to
/// re-test the primes coming out of [`factorize`].
pub fn is_prime_mr(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Sorted complete prime factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFactorization {
    pub pairs: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    /// Exponent of p (zero when absent).
    pub fn exponent(&self, p: u64) -> u32 {
        self.pairs.iter().find(|&&(q, _)| q == p).map(|&(_, e)| e).unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// Factor n >= 1 by trial division.
pub fn factorize(n: u64) -> PrimeFactorization {
    assert!(n >= 1);
    let mut pairs = Vec::new();
    let mut rem = n;
    let mut d = 2u64;
    while d * d <= rem {
        if rem % d == 0 {
            let mut e = 0u32;
            while rem % d == 0 {
                rem /= d;
                e += 1;
            }
            pairs.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rem > 1 {
        pairs.push((rem, 1));
    }
    debug_assert!(pairs.iter().all(|&(p, _)| is_prime_mr(p)));
    debug_assert_eq!(PrimeFactorization { pairs: pairs.clone() }.value(), n);
    PrimeFactorization { pairs }
}

/// The unique x > y > 0 with x^2 + y^2 = p, for primes p = 1 mod 4.
pub fn two_square(p: u64) -> Result<(u64, u64), Error> {
    if p % 4 != 1 {
        return Err(Error::Arithmetic(format!(
            "{} is not 1 mod 4, no two-square representation",
            p
        )));
    }
    let mut y = 1u64;
    while 2 * y * y <= p {
        let rest = p - y * y;
        let x = isqrt(rest);
        if x * x == rest {
            return Ok((x, y));
        }
        y += 1;
    }
    Err(Error::Arithmetic(format!("no two-square representation found for {}", p)))
}

/// Representation p = X^2 + 5Y^2 for a prime, when it exists.
pub fn rep_x2_5y2(p: u64) -> Option<(u64, u64)> {
    let mut y = 0u64;
    while 5 * y * y <= p {
        let rest = p - 5 * y * y;
        let x = isqrt(rest);
        if x * x == rest {
            return Some((x, y));
        }
        y += 1;
    }
    None
}
