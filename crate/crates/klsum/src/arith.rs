//! Small-integer number theory helpers: primality, factorization, divisors,
//! Euler phi, modular arithmetic on `u64`.
//!
//! Everything here is exhaustive/trial-division based. The field cap keeps
//! all inputs far below the range where that would matter.

use crate::error::{Error, Result};

/// Deterministic primality by trial division.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m.is_multiple_of(2) {
        return m == 2;
    }
    let mut i = 3u64;
    while i * i <= m {
        if m.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NonPrime(p))
    }
}

/// Prime factorization as (prime, multiplicity) pairs, ascending.
pub fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, k: u32| {
        if k > 0 {
            out.push((p, k));
        }
    };
    let mut k = 0;
    while m.is_multiple_of(2) {
        m /= 2;
        k += 1;
    }
    push(2, k);
    let mut d = 3u64;
    while d * d <= m {
        let mut k = 0;
        while m.is_multiple_of(d) {
            m /= d;
            k += 1;
        }
        push(d, k);
        d += 2;
    }
    if m > 1 {
        push(m, 1);
    }
    out
}

pub fn distinct_prime_factors(m: u64) -> Vec<u64> {
    factor(m).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors, ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    assert!(m > 0, "divisors of 0");
    let mut out = vec![1u64];
    for (p, k) in factor(m) {
        let base = out.clone();
        let mut pe = 1u64;
        for _ in 0..k {
            pe *= p;
            out.extend(base.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(m: u64) -> u64 {
    let mut res = m;
    for (p, _) in factor(m) {
        res = res / p * (p - 1);
    }
    res
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// `base^exp mod m` with 128-bit intermediates.
pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m > 0);
    if m == 1 {
        return 0;
    }
    base %= m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Modular inverse of `a` mod `m`, when it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = extended_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b).
pub fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    (old_r, old_x, old_y)
}

/// Smallest primitive root modulo an odd prime p (or 1 for p = 2).
pub fn primitive_root_mod(p: u64) -> u64 {
    debug_assert!(is_prime(p));
    if p == 2 {
        return 1;
    }
    let factors = distinct_prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&l| mod_pow(g, (p - 1) / l, p) != 1))
        .expect("every prime has a primitive root")
}
