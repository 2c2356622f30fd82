//! Lower bounds for `χ_k(R^n, A_m)^{1/n}` from the ratio
//!
//! ```text
//! F_γ(t, l) = θ(t^γ; l) / (1 + t + ⋯ + t^{l−1}),    γ = k / (m + 1),
//! ```
//!
//! maximized over `t ∈ (0, 1)` and `l ≥ 1`. Numerator and denominator both have
//! `l` terms, and `l_star` is reported in that convention.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::optimize::GridGolden;
use crate::special_functions::{
    check_gamma, check_terms, check_unit_closed, gamma_chi, theta_truncated_unchecked,
};

/// Extra `l` values searched past `⌈2/γ⌉`.
pub const L_WINDOW_MARGIN: usize = 2;

/// Number of forbidden distances `m` and clique parameter `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundQuery {
    pub m: u32,
    pub k: u32,
}

impl BoundQuery {
    pub fn new(m: u32, k: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::OutOfRange {
                what: "m",
                value: 0,
                min: 1,
                max: u32::MAX as u64,
            });
        }
        if k == 0 {
            return Err(Error::OutOfRange {
                what: "k",
                value: 0,
                min: 1,
                max: u32::MAX as u64,
            });
        }
        Ok(BoundQuery { m, k })
    }

    /// `γ = k / (m + 1)`.
    pub fn gamma(&self) -> f64 {
        self.k as f64 / (self.m as f64 + 1.0)
    }

    /// The bound is only nontrivial for `k ≤ m`.
    pub fn is_trivial_regime(&self) -> bool {
        self.k > self.m
    }
}

/// One cell of the `ζ_m^k` table with its maximizing parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundResult {
    pub m: u32,
    pub k: u32,
    pub gamma: f64,
    pub l_star: usize,
    pub t_star: f64,
    pub value: f64,
    /// Set when `k > m`; the value may then be the trivial bound 1.
    pub trivial_regime: bool,
}

/// `F_γ(t, l)`, with the `t → 0` limit value `1` at `t = 0`.
#[allow(non_snake_case)]
pub fn F_ratio(t: f64, gamma: f64, l: usize) -> Result<f64> {
    check_unit_closed(t, "t")?;
    check_gamma(gamma)?;
    check_terms(l)?;
    Ok(ratio_unchecked(t, gamma, l))
}

fn ratio_unchecked(t: f64, gamma: f64, l: usize) -> f64 {
    let numerator = theta_truncated_unchecked(libm::pow(t, gamma), l);
    let mut denominator = 0.0;
    let mut power = 1.0;
    for _ in 0..l {
        denominator += power;
        power *= t;
    }
    numerator / denominator
}

/// Global maximum of `F_γ(·, l)` on `(0, 1)` as `(t_star, value)`.
///
/// Both endpoint limits equal 1, so the value is never below 1. When the
/// supremum is only approached as `t → 0` (for instance `γ ≥ 1`) the result is
/// `(0, 1)`.
pub fn maximize_over_t(gamma: f64, l: usize, tol: f64) -> Result<(f64, f64)> {
    check_gamma(gamma)?;
    check_terms(l)?;
    check_tol(tol)?;
    if l == 1 {
        return Ok((0.0, 1.0));
    }
    let best = GridGolden::with_tol(tol).maximize(0.0, 1.0, |t| ratio_unchecked(t, gamma, l));
    if best.value > 1.0 {
        Ok((best.x, best.value))
    } else {
        Ok((0.0, 1.0))
    }
}

/// The last `l` searched by [`best_l`]: `⌈2/γ⌉ + 2`.
pub fn l_window(gamma: f64) -> usize {
    libm::ceil(2.0 / gamma) as usize + L_WINDOW_MARGIN
}

/// Maximizes over `l = 1 ..= ⌈2/γ⌉ + 2`, returning `(l_star, t_star, value)`.
///
/// Ties go to the smaller `l`.
pub fn best_l(gamma: f64, tol: f64) -> Result<(usize, f64, f64)> {
    check_gamma(gamma)?;
    check_tol(tol)?;
    let mut best = (1, 0.0, 1.0);
    for l in 2..=l_window(gamma) {
        let (t, v) = maximize_over_t(gamma, l, tol)?;
        if v > best.2 {
            best = (l, t, v);
        }
    }
    Ok(best)
}

/// The lower bound `max_l max_t F_{k/(m+1)}(t, l)` for `limsup χ_k(R^n, A_m)^{1/n}`.
pub fn chromatic_lower_bound(q: BoundQuery, tol: f64) -> Result<BoundResult> {
    let q = BoundQuery::new(q.m, q.k)?;
    let gamma = q.gamma();
    let (l_star, t_star, value) = best_l(gamma, tol)?;
    Ok(BoundResult {
        m: q.m,
        k: q.k,
        gamma,
        l_star,
        t_star,
        value,
        trivial_regime: q.is_trivial_regime(),
    })
}

/// `Γ_χ · sqrt((m + 1) / k)`, the large-`n` form of the bound.
pub fn asymptotic_lower_bound(q: BoundQuery) -> Result<f64> {
    let q = BoundQuery::new(q.m, q.k)?;
    let g = gamma_chi(1e-15)?;
    Ok(g.value * libm::sqrt((q.m as f64 + 1.0) / q.k as f64))
}

/// `2(√m + 1)`, the base of the known upper bound for `χ(R^n, A_m)`.
pub fn kupavskii_upper_base(m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "m",
            value: 0,
            min: 1,
            max: u32::MAX as u64,
        });
    }
    Ok(2.0 * (libm::sqrt(m as f64) + 1.0))
}

/// Queries for every table cell `1 ≤ k ≤ min(m, k_max)`, `1 ≤ m ≤ m_max`,
/// ordered by `m` then `k`.
pub fn table_queries(m_max: u32, k_max: u32) -> Result<Vec<BoundQuery>> {
    BoundQuery::new(m_max, k_max)?;
    let mut out = Vec::new();
    for m in 1..=m_max {
        for k in 1..=m.min(k_max) {
            out.push(BoundQuery { m, k });
        }
    }
    Ok(out)
}

/// The full table, computed cell by cell in [`table_queries`] order.
pub fn table(m_max: u32, k_max: u32, tol: f64) -> Result<Vec<BoundResult>> {
    table_queries(m_max, k_max)?
        .into_iter()
        .map(|q| chromatic_lower_bound(q, tol))
        .collect()
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what: "tol",
            value: tol,
            expected: "(0, inf)",
        })
    }
}
