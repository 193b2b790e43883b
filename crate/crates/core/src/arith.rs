//! Exact integer kernel: binomials, factorials, Legendre and p-adic
//! valuations over arbitrary-precision integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`. Vanishes for `k < 0` and `k > n`.
pub fn binom(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeArgument { what: "n", value: n });
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(n, i) here, so the division is exact
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(BigInt::from(acc))
}

pub fn factorial(m: u64) -> BigInt {
    let mut acc = BigUint::one();
    for i in 2..=m {
        acc *= i;
    }
    BigInt::from(acc)
}

/// Exponent of `p` in `m!` by Legendre's formula.
pub fn legendre_valuation(m: u64, p: u64) -> Result<u64> {
    ensure_prime(p)?;
    let mut total = 0u64;
    let mut rest = m;
    while rest > 0 {
        rest /= p;
        total += rest;
    }
    Ok(total)
}

/// Largest `k` with `p^k | x`.
pub fn padic_valuation(x: &BigInt, p: u64) -> Result<u64> {
    ensure_prime(p)?;
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = BigUint::from(p);
    let mut rest = x.abs().to_biguint().expect("absolute value");
    let mut k = 0u64;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(k);
        }
        rest = q;
        k += 1;
    }
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Deterministic Miller-Rabin over the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `base^exp` for a machine-sized base.
pub fn pow(base: impl Into<BigInt>, exp: u64) -> BigInt {
    num_traits::pow::pow(base.into(), exp as usize)
}
