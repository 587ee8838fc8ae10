//! Exact 64-bit number theory: modular inverses, primality, prime search,
//! and the seeded sampling used by key generation.
//!
//! Every reduction returns the canonical representative in `[0, modulus)`.
//! Products are formed in `u128` so nothing here can wrap.

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

use crate::error::{Error, Result};

/// Deterministic pseudo-random source.
///
/// A PCG-XSL-RR 128/64 generator expanded from a single `u64` seed, so the
/// same seed draws the same sequence on every platform. Not suitable for
/// anything that needs real entropy.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    inner: Pcg64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            seed,
            inner: Pcg64::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw from the inclusive range `[lo, hi]`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> Result<u64> {
        if lo > hi {
            return Err(Error::EmptyRange { lo, hi });
        }
        Ok(self.inner.random_range(lo..=hi))
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `n` by the extended Euclidean algorithm.
///
/// `a` may be any value; it is reduced first. The result lies in `[1, n)`.
pub fn mod_inverse(a: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    let a = a % n;
    // Invariant: old_s * a ≡ old_r and s * a ≡ r (mod n).
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { value: a, modulus: n });
    }
    Ok(old_s.rem_euclid(n as i128) as u64)
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin, exact for every `u64`.
///
/// Bases {2, 7, 61} settle everything below 2^32; the first twelve primes
/// settle everything below 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    if n < 37 * 37 {
        return true;
    }

    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }

    let witnesses: &[u64] = if n < 1 << 32 { &[2, 7, 61] } else { &SMALL_PRIMES };
    'witness: for &a in witnesses {
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

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> Result<u64> {
    let mut candidate = n.checked_add(1).ok_or(Error::Overflow("next_prime"))?;
    while !is_prime(candidate) {
        candidate = candidate.checked_add(1).ok_or(Error::Overflow("next_prime"))?;
    }
    Ok(candidate)
}

/// Uniform integer in `[lo, hi]`.
pub fn sample_range(lo: u64, hi: u64, rng: &mut SeededRng) -> Result<u64> {
    rng.range_inclusive(lo, hi)
}

/// Uniform draw from the units of `Z_p` lying in `[2, p)`.
///
/// Rejection sampling over `[2, p - 1]`; `p - 1` is always a unit, so the
/// loop terminates whenever `p >= 3`.
pub fn sample_invertible(p: u64, rng: &mut SeededRng) -> Result<u64> {
    if p < 3 {
        return Err(Error::NoInvertibleElement(p));
    }
    loop {
        let f = rng.range_inclusive(2, p - 1)?;
        if gcd(f, p) == 1 {
            return Ok(f);
        }
    }
}
