//! Deterministic primality for 64-bit integers and prime selection.

use crate::error::{Error, Result};

/// The first twelve primes. Miller-Rabin with these bases is exact for all
/// `n < 3.3 · 10^24`, which covers `u64`.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Largest accepted argument of [`next_prime`] (exclusive).
pub const NEXT_PRIME_LIMIT: u64 = 1 << 63;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` for `m ≥ 1`.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    result
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
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

/// Smallest prime strictly greater than `x`, for `x < 2^63`.
pub fn next_prime(x: u64) -> Result<u64> {
    if x >= NEXT_PRIME_LIMIT {
        return Err(Error::OutOfRange {
            what: "x",
            value: x,
            min: 0,
            max: NEXT_PRIME_LIMIT - 1,
        });
    }
    if x < 2 {
        return Ok(2);
    }
    // Bertrand guarantees a prime below 2x < 2^64.
    let mut candidate = if x % 2 == 0 { x + 1 } else { x + 2 };
    while !is_prime(candidate) {
        candidate += 2;
    }
    Ok(candidate)
}

/// The prime used for a point set of half-diameter `d_max` and `m` distances,
/// and how far it overshoots `d_max / (m + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimeGapReport {
    pub p: u64,
    pub threshold: f64,
    /// `p − d_max / (m + 1)`, always positive.
    pub epsilon0: f64,
}

/// Smallest prime `p > d_max / (m + 1)`.
///
/// `p(m + 1) > d_max` holds exactly when `p > ⌊d_max / (m + 1)⌋`, so the
/// rational threshold needs no rounding.
pub fn prime_gap_report(d_max: u64, m: u64) -> Result<PrimeGapReport> {
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "m",
            value: 0,
            min: 1,
            max: u64::MAX,
        });
    }
    let divisor = m.checked_add(1).ok_or(Error::Overflow("m + 1"))?;
    let p = next_prime(d_max / divisor)?;
    let threshold = d_max as f64 / divisor as f64;
    Ok(PrimeGapReport {
        p,
        threshold,
        epsilon0: p as f64 - threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn sieve(n: usize) -> Vec<bool> {
        let mut is = vec![true; n + 1];
        is[0] = false;
        if n >= 1 {
            is[1] = false;
        }
        let mut i = 2;
        while i * i <= n {
            if is[i] {
                let mut j = i * i;
                while j <= n {
                    is[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is
    }

    #[test]
    fn matches_sieve_below_100k() {
        let table = sieve(100_000);
        for (n, &p) in table.iter().enumerate() {
            assert_eq!(is_prime(n as u64), p, "n = {n}");
        }
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime(10).unwrap(), 11);
        assert_eq!(next_prime(2).unwrap(), 3);
        assert_eq!(next_prime(89).unwrap(), 97);
        assert_eq!(next_prime(0).unwrap(), 2);
        assert_eq!(next_prime(1).unwrap(), 2);
    }

    #[test]
    fn next_prime_agrees_with_sieve() {
        let table = sieve(20_000);
        for x in 0..19_000u64 {
            let want = (x as usize + 1..).find(|&n| table[n]).unwrap() as u64;
            assert_eq!(next_prime(x).unwrap(), want);
        }
    }

    #[test]
    fn large_known_values() {
        // Strong pseudoprimes to small base sets and well-known large primes.
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(is_prime((1 << 61) - 1));
        assert_eq!(next_prime((1 << 62) - 1).unwrap(), (1 << 62) + 135);
        assert!(next_prime(1 << 63).is_err());
    }

    #[test]
    fn prime_gap_examples() {
        let r = prime_gap_report(20, 1).unwrap();
        assert_eq!(r.p, 11);
        assert_eq!(r.epsilon0, 1.0);
        let r = prime_gap_report(21, 2).unwrap();
        assert_eq!(r.p, 11);
        assert_eq!(r.epsilon0, 4.0);
        let r = prime_gap_report(7, 1).unwrap();
        assert_eq!(r.p, 5);
        assert_eq!(r.epsilon0, 1.5);
        assert!(prime_gap_report(5, 0).is_err());
    }
}
