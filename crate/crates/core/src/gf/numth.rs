//! Small integer number theory used by the field and cyclic-code layers.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^e`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = prime_factors(q)[0];
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, e))
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Smallest `m >= 1` with `q^m = 1 (mod n)`.
pub fn order_of(q: u64, n: u64) -> Result<u32> {
    if n == 0 || gcd(n, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    if n == 1 {
        return Ok(1);
    }
    let mut acc = q % n;
    let mut m = 1;
    while acc != 1 {
        acc = ((acc as u128 * q as u128) % n as u128) as u64;
        m += 1;
    }
    Ok(m)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(order_of(5, 7).unwrap(), 6);
        assert_eq!(order_of(2, 7).unwrap(), 3);
        assert_eq!(order_of(2, 73).unwrap(), 9);
        assert_eq!(order_of(2, 1).unwrap(), 1);
        assert!(matches!(order_of(2, 6), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn order_of_341_is_minimal() {
        // 341 = (2^10 - 1) / 3; brute-force the first return to 1.
        let m = order_of(2, 341).unwrap();
        assert_eq!(m, 10);
        for k in 1..m {
            assert_ne!(pow_mod(2, k as u64, 341), 1);
        }
        assert_eq!(pow_mod(2, 10, 341), 1);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8).unwrap(), (2, 3));
        assert_eq!(prime_power(5).unwrap(), (5, 1));
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
        assert_eq!(prime_factors(1023), vec![3, 11, 31]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(36, 7), 8_347_680);
        assert_eq!(binomial(3, 5), 0);
    }
}
