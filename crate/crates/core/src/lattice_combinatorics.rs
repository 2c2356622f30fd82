//! Exact counting behind the polynomial-method bounds: lattice points of the box
//! `{0,…,l}^n` below a coordinate-sum threshold, the largest half squared
//! distance inside a symbol-multiset class, and the multinomial averaging
//! lemma. Prime selection lives in [`crate::primes`] and is re-exported here.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub use crate::primes::{is_prime, next_prime, prime_gap_report, PrimeGapReport};

/// Enumeration cap for [`dmax_bruteforce`].
pub const DMAX_BRUTEFORCE_BUDGET: u128 = 100_000;
/// Enumeration cap for [`multinomial_lemma_check`].
pub const MULTINOMIAL_BUDGET: u128 = 1_000_000;

/// `#{v ∈ {0,…,l}^n : Σ v_i ≤ d}`.
///
/// Rolling coefficients of `(1 + x + ⋯ + x^l)^n` truncated at degree `d`, each
/// factor applied through a sliding window sum.
pub fn count_box(n: u32, l: u32, d: u64) -> BigUint {
    let top = (n as u64 * l as u64).min(d) as usize;
    let width = l as usize + 1;
    let mut coeffs = vec![BigUint::from(0u32); top + 1];
    coeffs[0] = BigUint::from(1u32);
    for _ in 0..n {
        let mut next = Vec::with_capacity(top + 1);
        let mut window = BigUint::from(0u32);
        for i in 0..=top {
            window += &coeffs[i];
            if i >= width {
                window -= &coeffs[i - width];
            }
            next.push(window.clone());
        }
        coeffs = next;
    }
    coeffs.into_iter().sum()
}

/// `(1 + t + ⋯ + t^l)^n / t^d`, an upper bound for [`count_box`] at any `t ∈ (0, 1)`.
pub fn gf_upper_bound(n: u32, l: u32, d: u64, t: f64) -> Result<f64> {
    ln_gf_upper_bound(n, l, d, t).map(libm::exp)
}

/// Natural logarithm of [`gf_upper_bound`], finite where the bound itself overflows.
pub fn ln_gf_upper_bound(n: u32, l: u32, d: u64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::OutOfDomain {
            what: "t",
            value: t,
            expected: "(0, 1)",
        });
    }
    // 1 + t + ⋯ + t^l = (1 − t^{l+1}) / (1 − t)
    let ln_t = libm::log(t);
    let base = libm::log(-libm::expm1((l as f64 + 1.0) * ln_t)) - libm::log1p(-t);
    Ok(n as f64 * base - d as f64 * ln_t)
}

/// Multiplicities `a_0, …, a_l` of the symbols `0, …, l` in a vector of length `n = Σ a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CompositionProfile {
    a: Vec<u64>,
}

impl CompositionProfile {
    /// Needs at least one symbol.
    pub fn new(a: Vec<u64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::ShapeMismatch {
                what: "profile length",
                expected: 1,
                found: 0,
            });
        }
        a.iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x))
            .ok_or(Error::Overflow("profile dimension"))?;
        Ok(CompositionProfile { a })
    }

    pub fn counts(&self) -> &[u64] {
        &self.a
    }

    /// Largest symbol `l`.
    pub fn l(&self) -> usize {
        self.a.len() - 1
    }

    /// Dimension `n = Σ a_i`.
    pub fn n(&self) -> u64 {
        self.a.iter().sum()
    }

    /// The reordering `b_l = a_l, b_{l−1} = a_0, b_{l−2} = a_{l−1}, b_{l−3} = a_1, …`:
    /// `a` is read from both ends alternately (starting at the top) and written
    /// into `b` from the top down.
    pub fn reordered(&self) -> Vec<u64> {
        let l = self.l();
        let mut b = vec![0; l + 1];
        let (mut lo, mut hi) = (0usize, l);
        for (step, slot) in (0..=l).rev().enumerate() {
            if step % 2 == 0 {
                b[slot] = self.a[hi];
                hi = hi.wrapping_sub(1);
            } else {
                b[slot] = self.a[lo];
                lo += 1;
            }
        }
        b
    }

    /// The vector with `a_i` copies of `i`, in nondecreasing order.
    pub fn sorted_vector(&self) -> Vec<u64> {
        self.a
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| core::iter::repeat(i as u64).take(c as usize))
            .collect()
    }

    /// `n! / ∏ a_i!`, or `None` on `u128` overflow.
    pub fn multinomial(&self) -> Option<u128> {
        multinomial(&self.a)
    }
}

fn multinomial(parts: &[u64]) -> Option<u128> {
    // Product of binomials C(a_0 + ⋯ + a_i, a_i); each step stays integral.
    let mut acc: u128 = 1;
    let mut total: u128 = 0;
    for &part in parts {
        for j in 1..=part as u128 {
            total += 1;
            acc = acc.checked_mul(total)? / j;
        }
    }
    Some(acc)
}

/// `Σ_j b_j C(j + 1, 2)` for the reordered profile `b`.
///
/// Equals the largest `½‖x − y‖²` over two vectors with the profile, provided
/// `b` is nonincreasing in its index; otherwise the first index `i` with
/// `b_i > b_{i−1}` is reported.
pub fn dmax_formula(profile: &CompositionProfile) -> Result<u128> {
    let b = profile.reordered();
    if let Some(i) = (1..b.len()).find(|&i| b[i] > b[i - 1]) {
        return Err(Error::InadmissibleProfile { index: i });
    }
    b.iter().enumerate().try_fold(0u128, |acc, (j, &bj)| {
        let c = (j as u128 + 1) * j as u128 / 2;
        c.checked_mul(bj as u128)
            .and_then(|term| acc.checked_add(term))
            .ok_or(Error::Overflow("d_max"))
    })
}

/// Largest `½‖x − y‖²` over all pairs of arrangements, by enumeration.
///
/// Permuting coordinates of both vectors together preserves the distance, so
/// `x` is fixed to the sorted arrangement and `y` runs over all distinct
/// arrangements.
pub fn dmax_bruteforce(profile: &CompositionProfile) -> Result<u128> {
    let needed = profile.multinomial().unwrap_or(u128::MAX);
    if needed > DMAX_BRUTEFORCE_BUDGET {
        return Err(Error::BudgetExceeded {
            needed,
            budget: DMAX_BRUTEFORCE_BUDGET,
        });
    }
    let x = profile.sorted_vector();
    let mut y = x.clone();
    let mut best = 0u128;
    loop {
        let sq: u128 = x
            .iter()
            .zip(&y)
            .map(|(&a, &b)| {
                let d = a.abs_diff(b) as u128;
                d * d
            })
            .sum();
        best = best.max(sq / 2);
        if !next_permutation(&mut y) {
            break;
        }
    }
    Ok(best)
}

/// Advances to the next lexicographic arrangement; `false` after the last one.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `(Σ_{i=0}^{j} (−1)^i (j − i)², C(j + 1, 2))`; the two agree for every `j`.
pub fn alternating_square_identity(j: u64) -> (i128, i128) {
    let lhs = (0..=j)
        .map(|i| {
            let s = (j - i) as i128;
            if i % 2 == 0 {
                s * s
            } else {
                -s * s
            }
        })
        .sum();
    let j = j as i128;
    (lhs, (j + 1) * j / 2)
}

/// Both sides of the multinomial averaging inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MultinomialCheck {
    /// Max of `multinomial(n; a) t^{Σ c_i a_i}` over compositions with
    /// `a_i ≤ a_j` whenever `c_i ≥ c_j`.
    pub lhs_max: f64,
    /// The same maximum over all compositions.
    pub unrestricted_max: f64,
    /// `(Σ t^{c_i})^n / (n + 1)^l`.
    pub rhs: f64,
    /// Number of compositions of `n` into `l + 1` parts.
    pub compositions: u128,
}

/// Relative slack for [`MultinomialCheck::holds`]; with one part both sides are
/// equal and are computed along different rounding paths.
pub const MULTINOMIAL_REL_SLACK: f64 = 1e-12;

impl MultinomialCheck {
    pub fn holds(&self) -> bool {
        self.lhs_max >= self.rhs * (1.0 - MULTINOMIAL_REL_SLACK)
    }
}

/// Enumerates compositions of `n` into `c.len()` parts to compare the best
/// ordered term of `(Σ t^{c_i})^n` with the average term bound.
///
/// There are `C(n + l, l) ≤ (n + 1)^l` compositions, so the largest term is at
/// least `(Σ t^{c_i})^n / (n + 1)^l`.
pub fn multinomial_lemma_check(n: u32, c: &[f64], t: f64) -> Result<MultinomialCheck> {
    if c.is_empty() {
        return Err(Error::ShapeMismatch {
            what: "c length",
            expected: 1,
            found: 0,
        });
    }
    if let Some(&bad) = c.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(Error::OutOfDomain {
            what: "c_i",
            value: bad,
            expected: "[0, inf)",
        });
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::OutOfDomain {
            what: "t",
            value: t,
            expected: "(0, 1)",
        });
    }
    let l = c.len() - 1;
    let compositions = binomial(n as u128 + l as u128, l as u128);
    if compositions > MULTINOMIAL_BUDGET {
        return Err(Error::BudgetExceeded {
            needed: compositions,
            budget: MULTINOMIAL_BUDGET,
        });
    }

    let ln_fact: Vec<f64> = core::iter::once(0.0)
        .chain((1..=n).scan(0.0, |acc, i| {
            *acc += libm::log(i as f64);
            Some(*acc)
        }))
        .collect();
    let ln_t = libm::log(t);
    let admissible =
        |a: &[u32]| (0..a.len()).all(|i| (0..a.len()).all(|j| c[i] < c[j] || a[i] <= a[j]));

    let mut lhs_max = f64::NEG_INFINITY;
    let mut unrestricted_max = f64::NEG_INFINITY;
    let mut a = vec![0u32; l + 1];
    a[l] = n;
    loop {
        let ln_term = ln_fact[n as usize]
            + a.iter()
                .zip(c)
                .map(|(&ai, &ci)| ci * ai as f64 * ln_t - ln_fact[ai as usize])
                .sum::<f64>();
        let term = libm::exp(ln_term);
        unrestricted_max = unrestricted_max.max(term);
        if admissible(&a) {
            lhs_max = lhs_max.max(term);
        }
        if !next_composition(&mut a) {
            break;
        }
    }
    if lhs_max == f64::NEG_INFINITY {
        return Err(Error::EmptyRestrictedSet);
    }
    let sum: f64 = c.iter().map(|&ci| libm::exp(ci * ln_t)).sum();
    let rhs = libm::exp(n as f64 * libm::log(sum) - l as f64 * libm::log(n as f64 + 1.0));
    Ok(MultinomialCheck {
        lhs_max,
        unrestricted_max,
        rhs,
        compositions,
    })
}

/// Steps through compositions with a fixed total, starting from `(0, …, 0, n)`
/// and ending at `(n, 0, …, 0)`.
fn next_composition(a: &mut [u32]) -> bool {
    let last = a.len() - 1;
    // Find the rightmost nonzero part before the end that can receive a unit.
    let Some(k) = (1..=last).rev().find(|&i| a[i] > 0) else {
        return false;
    };
    let moved = a[k] - 1;
    a[k - 1] += 1;
    a[k] = 0;
    a[last] += moved;
    true
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}
