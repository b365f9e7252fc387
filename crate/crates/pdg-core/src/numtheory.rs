//! Exact elementary number theory: totient, Moebius, multiplicative
//! order, the coprime split `n = t*w`, and big-integer combinatorics.
//!
//! Everything here is plain `u64` arithmetic (desk scale, no
//! factorization beyond trial division) except the counts that grow
//! factorially, which use [`BigCount`].

use num_bigint::BigUint;
use num_traits::One;

use crate::{Error, Result};

/// Arbitrary-precision nonnegative count (automorphism group orders
/// grow factorially).
pub type BigCount = BigUint;

/// The split `n = t * w` where `t` is the largest divisor of `n`
/// coprime to `k`. `t` counts the cycle vertices of the digraph and
/// `w` is the size of each hanging tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoprimeSplit {
    /// Group order, `n > 1`.
    pub n: u64,
    /// Exponent normalized into `1..=n`.
    pub k: u64,
    /// Largest divisor of `n` coprime to `k`.
    pub t: u64,
    /// `n / t`; every prime of `w` divides `k`.
    pub w: u64,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// `base^exp mod m` (`m >= 1`); returns 0 when `m == 1`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m >= 1);
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Reduce an exponent `K >= 1` into the canonical range `1..=n`
/// (`x^K` only depends on `K mod n`).
pub fn normalize_exponent(n: u64, exponent: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("group order must be > 1, got {n}")));
    }
    if exponent == 0 {
        return Err(Error::Domain("exponent must be >= 1".into()));
    }
    Ok((exponent - 1) % n + 1)
}

/// Euler's totient by trial division.
pub fn euler_phi(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::Domain("euler_phi undefined at 0".into()));
    }
    let mut rest = m;
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut pe = 1;
            while rest % p == 0 {
                rest /= p;
                pe *= p;
            }
            phi *= pe - pe / p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        phi *= rest - 1;
    }
    Ok(phi)
}

/// Moebius function: 0 on non-squarefree `m`, otherwise `(-1)^omega(m)`.
pub fn moebius(m: u64) -> Result<i32> {
    if m == 0 {
        return Err(Error::Domain("moebius undefined at 0".into()));
    }
    let mut rest = m;
    let mut sign = 1i32;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Least `e >= 1` with `k^e = 1 mod d`; requires `gcd(k, d) = 1`.
/// By convention the order modulo 1 is 1.
pub fn mult_order(k: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::Domain("modulus must be >= 1".into()));
    }
    if d == 1 {
        return Ok(1);
    }
    let base = k % d;
    if gcd(base, d) != 1 {
        return Err(Error::Domain(format!(
            "multiplicative order requires gcd(k, d) = 1, got k={k}, d={d}"
        )));
    }
    let mut x = base;
    let mut e = 1u64;
    while x != 1 {
        x = (x as u128 * base as u128 % d as u128) as u64;
        e += 1;
    }
    Ok(e)
}

/// Split a positive integer into `(t, w)` with `t` the largest divisor
/// coprime to `k` and `w = m / t`.
pub(crate) fn split_parts(m: u64, k: u64) -> (u64, u64) {
    debug_assert!(m >= 1 && k >= 1);
    let mut t = m;
    loop {
        let g = gcd(t, k);
        if g == 1 {
            break;
        }
        t /= g;
    }
    (t, m / t)
}

/// The split `n = t*w` of the group order with respect to the exponent.
/// The exponent is normalized into `1..=n` first.
pub fn coprime_split(n: u64, k: u64) -> Result<CoprimeSplit> {
    let k = normalize_exponent(n, k)?;
    let (t, w) = split_parts(n, k);
    Ok(CoprimeSplit { n, k, t, w })
}

/// Least `h >= 0` with `w | k^h`. Exists iff every prime of `w`
/// divides `k`; counting gcd-division steps computes
/// `max_p ceil(v_p(w) / v_p(k))` without factoring.
pub fn min_pow_divides(w: u64, k: u64) -> Result<u64> {
    if w == 0 || k == 0 {
        return Err(Error::Domain(
            "min_pow_divides needs positive arguments".into(),
        ));
    }
    let mut rest = w;
    let mut h = 0u64;
    while rest > 1 {
        let g = gcd(rest, k);
        if g == 1 {
            return Err(Error::Domain(format!(
                "no power of k={k} is divisible by w={w}"
            )));
        }
        rest /= g;
        h += 1;
    }
    Ok(h)
}

/// `gcd(k^m - 1, n)` without forming `k^m`: reduce `k^m mod n` first.
pub fn gcd_pow_minus_one(k: u64, m: u64, n: u64) -> u64 {
    debug_assert!(m >= 1 && n >= 1);
    if n == 1 {
        return 1;
    }
    let r = pow_mod(k, m, n);
    gcd((r + n - 1) % n, n)
}

/// Divisors of `m` in ascending order, by trial division.
pub fn divisors(m: u64) -> Vec<u64> {
    assert!(m >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m % 2 == 0 {
        return m == 2;
    }
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

/// Exact `m!`.
pub fn big_factorial(m: u64) -> BigCount {
    let mut acc = BigCount::one();
    for i in 2..=m {
        acc *= i;
    }
    acc
}

/// Exact `b^e`.
pub fn big_pow(b: &BigCount, e: u64) -> BigCount {
    b.pow(e as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(7).unwrap(), 6);
        // direct count of residues coprime to 28
        let brute = (1..=28).filter(|i| gcd(*i, 28) == 1).count() as u64;
        assert_eq!(brute, 12);
        assert_eq!(euler_phi(28).unwrap(), brute);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn mult_order_values() {
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(5, 1).unwrap(), 1);
        assert_eq!(mult_order(2, 11).unwrap(), 10);
        assert_eq!(mult_order(2, 15).unwrap(), 4);
        assert!(mult_order(2, 6).is_err());
    }

    #[test]
    fn coprime_split_values() {
        let s = coprime_split(28, 2).unwrap();
        assert_eq!((s.t, s.w), (7, 4));
        let s = coprime_split(40, 4).unwrap();
        assert_eq!((s.t, s.w), (5, 8));
        let s = coprime_split(30, 1).unwrap();
        assert_eq!((s.t, s.w), (30, 1));
        assert!(coprime_split(1, 1).is_err());
    }

    #[test]
    fn exponent_normalization() {
        assert_eq!(normalize_exponent(10, 12).unwrap(), 2);
        assert_eq!(normalize_exponent(10, 10).unwrap(), 10);
        assert_eq!(normalize_exponent(10, 21).unwrap(), 1);
        assert!(normalize_exponent(10, 0).is_err());
    }

    #[test]
    fn min_pow_divides_values() {
        assert_eq!(min_pow_divides(4, 2).unwrap(), 2);
        assert_eq!(min_pow_divides(1, 17).unwrap(), 0);
        assert_eq!(min_pow_divides(8, 6).unwrap(), 3);
        assert!(min_pow_divides(6, 2).is_err());
    }

    #[test]
    fn gcd_pow_minus_one_values() {
        assert_eq!(gcd_pow_minus_one(2, 3, 28), 7);
        assert_eq!(gcd_pow_minus_one(9, 5, 1), 1);
        assert_eq!(gcd_pow_minus_one(2, 1, 28), 1);
    }

    #[test]
    fn big_combinatorics() {
        assert_eq!(big_factorial(0), BigCount::from(1u32));
        assert_eq!(big_factorial(5), BigCount::from(120u32));
        assert_eq!(big_pow(&BigCount::from(2u32), 10), BigCount::from(1024u32));
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(28), vec![1, 2, 4, 7, 14, 28]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn totient_and_moebius_divisor_sums() {
        for n in 1..=500u64 {
            let phi_sum: u64 = divisors(n).iter().map(|&d| euler_phi(d).unwrap()).sum();
            assert_eq!(phi_sum, n);
            if n > 1 {
                let mu_sum: i32 = divisors(n).iter().map(|&d| moebius(d).unwrap()).sum();
                assert_eq!(mu_sum, 0, "moebius divisor sum failed at {n}");
            }
        }
    }

    #[test]
    fn split_is_maximal() {
        for n in 2..=200u64 {
            for k in 1..=n {
                let s = coprime_split(n, k).unwrap();
                assert_eq!(s.t * s.w, n);
                assert_eq!(gcd(s.t, s.k), 1);
                assert_eq!(gcd(s.t, s.w), 1);
                for d in divisors(n) {
                    if gcd(d, s.k) == 1 {
                        assert!(d <= s.t, "divisor {d} coprime to k={k} exceeds t={}", s.t);
                    }
                }
            }
        }
    }

    #[test]
    fn min_pow_is_minimal() {
        let zero = BigInt::from(0);
        for w in 1..=300u64 {
            for k in 2..=30u64 {
                let Ok(h) = min_pow_divides(w, k) else {
                    continue;
                };
                let big_w = BigInt::from(w);
                assert_eq!(BigInt::from(k).pow(h as u32) % &big_w, zero);
                if h > 0 {
                    assert_ne!(BigInt::from(k).pow(h as u32 - 1) % &big_w, zero);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn gcd_pow_matches_bigint(k in 1u64..=30, m in 1u64..=30, n in 1u64..=30) {
            let big = BigInt::from(k).pow(m as u32) - 1;
            let expected = num_integer::gcd(big, BigInt::from(n));
            prop_assert_eq!(BigInt::from(gcd_pow_minus_one(k, m, n)), expected);
        }

        #[test]
        fn split_invariants(n in 2u64..=5000, k in 1u64..=5000) {
            let s = coprime_split(n, k).unwrap();
            prop_assert_eq!(s.t * s.w, n);
            prop_assert_eq!(gcd(s.t, s.k), 1);
            prop_assert_eq!(gcd(s.t, s.w), 1);
        }
    }
}
