//! Partial theta functions, Jacobi theta functions, and the constant `Γ_χ`.
//!
//! The partial theta function is `θ(t) = Σ_{j≥1} t^{C(j,2)} = 1 + t + t³ + t⁶ + …`
//! and `θ(t; l)` keeps its first `l` terms. Most callers evaluate it at
//! `t^γ`, so every entry point takes the exponent scale `γ` directly.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::optimize::GridGolden;

/// Relative size of the next term below which a series is cut off.
pub const TERM_CUTOFF: f64 = 1e-18;
/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 50_000_000;

/// A finite sum `Σ c_i t^{e_i}` with strictly increasing exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialSum {
    terms: Vec<(f64, f64)>,
}

impl ExponentialSum {
    /// Builds a sum from `(coefficient, exponent)` pairs.
    pub fn new(terms: Vec<(f64, f64)>) -> Result<Self> {
        let mut prev = f64::NEG_INFINITY;
        for &(c, e) in &terms {
            if !c.is_finite() {
                return Err(Error::OutOfDomain {
                    what: "coefficient",
                    value: c,
                    expected: "finite reals",
                });
            }
            if !(e >= 0.0 && e.is_finite() && e > prev) {
                return Err(Error::OutOfDomain {
                    what: "exponent",
                    value: e,
                    expected: "finite, nonnegative, strictly increasing exponents",
                });
            }
            prev = e;
        }
        Ok(ExponentialSum { terms })
    }

    /// `θ(t^γ; l) = Σ_{j=1}^{l} t^{γ C(j,2)}`.
    pub fn truncated_theta(gamma: f64, l: usize) -> Result<Self> {
        check_gamma(gamma)?;
        check_terms(l)?;
        let terms = (1..=l).map(|j| (1.0, gamma * binom2(j) as f64)).collect();
        ExponentialSum::new(terms)
    }

    /// `1 + t + … + t^{l-1}`.
    pub fn geometric(l: usize) -> Result<Self> {
        check_terms(l)?;
        ExponentialSum::new((0..l).map(|i| (1.0, i as f64)).collect())
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates the sum at `t ∈ [0, 1]`, with `0^0 = 1`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        check_unit_closed(t, "t")?;
        Ok(self
            .terms
            .iter()
            .map(|&(c, e)| if e == 0.0 { c } else { c * libm::pow(t, e) })
            .sum())
    }
}

/// A series value together with a rigorous bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// `Γ_χ` and the maximizer of `(1 − e^{−u}) / √u`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GammaChiResult {
    /// `Γ_χ = sqrt(π/2) · inner_max`.
    pub value: f64,
    /// Root of `e^u = 1 + 2u` on `u > 0`.
    pub u_star: f64,
    /// `max_{u>0} (1 − e^{−u}) / √u`.
    pub inner_max: f64,
    /// `|e^{u*} − 1 − 2u*|`.
    pub stationarity_residual: f64,
}

pub(crate) fn binom2(j: usize) -> usize {
    j * (j.saturating_sub(1)) / 2
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what: "gamma",
            value: gamma,
            expected: "(0, inf)",
        })
    }
}

pub(crate) fn check_terms(l: usize) -> Result<()> {
    if l >= 1 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "l",
            value: 0,
            min: 1,
            max: u64::MAX,
        })
    }
}

pub(crate) fn check_unit_closed(t: f64, what: &'static str) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what,
            value: t,
            expected: "[0, 1]",
        })
    }
}

pub(crate) fn check_unit_half_open(t: f64, what: &'static str) -> Result<()> {
    if (0.0..1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what,
            value: t,
            expected: "[0, 1)",
        })
    }
}

/// `θ(t^γ; l) = Σ_{j=1}^{l} t^{γ C(j,2)}`; the `j = 1` term is `1`.
pub fn theta_truncated(t: f64, gamma: f64, l: usize) -> Result<f64> {
    check_unit_closed(t, "t")?;
    check_gamma(gamma)?;
    check_terms(l)?;
    Ok(theta_truncated_unchecked(libm::pow(t, gamma), l))
}

/// Sum of `s^{C(j,2)}` for `j = 1..=l`, with `s = t^γ` already applied.
///
/// Successive exponents differ by `j`, so each term is the previous one times
/// `s^j`.
pub(crate) fn theta_truncated_unchecked(s: f64, l: usize) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut ratio = 1.0;
    for _ in 1..l {
        ratio *= s;
        term *= ratio;
        if term == 0.0 {
            break;
        }
        sum += term;
    }
    sum
}

/// `θ(t^γ)` summed to convergence, with a geometric tail certificate.
///
/// Terms are added until the next one is below `1e-18` of the partial sum and
/// the tail bound is below `tail_tol` times the partial sum. After `J` terms
/// the ratio of consecutive remaining terms is at most `r = t^{γJ}`, so the
/// tail is at most `next / (1 − r)`.
pub fn theta_full(t: f64, gamma: f64, tail_tol: f64) -> Result<SeriesValue> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::OutOfDomain {
            what: "t",
            value: t,
            expected: "[0, 1)",
        });
    }
    check_gamma(gamma)?;
    if tail_tol.is_nan() || tail_tol <= 0.0 {
        return Err(Error::OutOfDomain {
            what: "tail_tol",
            value: tail_tol,
            expected: "(0, inf)",
        });
    }
    let s = libm::pow(t, gamma);
    if s == 0.0 {
        return Ok(SeriesValue {
            value: 1.0,
            tail_bound: 0.0,
            terms: 1,
        });
    }

    let mut sum = 1.0;
    let mut terms = 1;
    // `ratio` is s^J after J terms; the next term is `term * ratio`.
    let mut term = 1.0;
    let mut ratio = s;
    loop {
        let next = term * ratio;
        let following_ratio = ratio * s;
        let tail_bound = if following_ratio < 1.0 {
            next / (1.0 - following_ratio)
        } else {
            f64::INFINITY
        };
        if next < TERM_CUTOFF * sum && tail_bound <= tail_tol * sum {
            return Ok(SeriesValue {
                value: sum,
                tail_bound,
                terms,
            });
        }
        if terms >= MAX_SERIES_TERMS {
            return Err(Error::SeriesNotConverged { terms });
        }
        sum += next;
        term = next;
        ratio = following_ratio;
        terms += 1;
    }
}

/// Which Jacobi theta function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiKind {
    /// `θ2(q) = Σ_{n∈Z} q^{(n+1/2)²}`
    Two,
    /// `θ3(q) = Σ_{n∈Z} q^{n²}`
    Three,
    /// `θ4(q) = Σ_{n∈Z} (−1)^n q^{n²}`
    Four,
}

impl TryFrom<u8> for JacobiKind {
    type Error = Error;

    fn try_from(kind: u8) -> Result<Self> {
        match kind {
            2 => Ok(JacobiKind::Two),
            3 => Ok(JacobiKind::Three),
            4 => Ok(JacobiKind::Four),
            other => Err(Error::OutOfRange {
                what: "theta kind",
                value: other as u64,
                min: 2,
                max: 4,
            }),
        }
    }
}

/// Jacobi theta function at real nome `q ∈ [0, 1)`.
pub fn jacobi_theta(kind: JacobiKind, q: f64) -> Result<f64> {
    jacobi_theta_series(kind, q).map(|s| s.value)
}

/// Jacobi theta function with its tail certificate.
///
/// The cutoff compares against the sum of absolute values, which keeps the
/// rule meaningful for `θ4` where cancellation makes the signed sum small.
pub fn jacobi_theta_series(kind: JacobiKind, q: f64) -> Result<SeriesValue> {
    check_unit_half_open(q, "q")?;
    if q == 0.0 {
        let value = if kind == JacobiKind::Two { 0.0 } else { 1.0 };
        return Ok(SeriesValue {
            value,
            tail_bound: 0.0,
            terms: 1,
        });
    }

    // Exponents e_n = n² (θ3, θ4) or n² + n (θ2, after pulling out q^{1/4}),
    // n ≥ 1; consecutive gaps are 2n+1 or 2n+2.
    let (lead, first_gap_exp) = match kind {
        JacobiKind::Two => (libm::pow(q, 0.25), 2.0),
        _ => (1.0, 1.0),
    };
    // θ2 has two n = 0 terms (n and −1 − n pair up); θ3, θ4 have one.
    let initial = if kind == JacobiKind::Two {
        2.0 * lead
    } else {
        lead
    };
    let sign_flip = kind == JacobiKind::Four;
    let mut signed = initial;
    let mut absolute = initial;
    let mut term = lead;
    let mut gap = libm::pow(q, first_gap_exp);
    let q2 = q * q;
    let mut n = 0usize;
    loop {
        n += 1;
        term *= gap;
        gap *= q2;
        let contribution = 2.0 * term;
        let next_ratio = gap;
        let tail_bound = if next_ratio < 1.0 {
            2.0 * term * next_ratio / (1.0 - next_ratio)
        } else {
            f64::INFINITY
        };
        if sign_flip && n % 2 == 1 {
            signed -= contribution;
        } else {
            signed += contribution;
        }
        absolute += contribution;
        if contribution < TERM_CUTOFF * absolute || term == 0.0 {
            return Ok(SeriesValue {
                value: signed,
                tail_bound,
                terms: n + 1,
            });
        }
        if n >= MAX_SERIES_TERMS {
            return Err(Error::SeriesNotConverged { terms: n });
        }
    }
}

/// `|θ(e^{−πx}) − e^{πx/8} / √(2x) · θ4(e^{−2π/x})|`.
pub fn functional_equation_residual(x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::OutOfDomain {
            what: "x",
            value: x,
            expected: "(0, inf)",
        });
    }
    let lhs = theta_full(libm::exp(-PI * x), 1.0, 1e-17)?.value;
    let theta4 = jacobi_theta(JacobiKind::Four, libm::exp(-2.0 * PI / x))?;
    let rhs = libm::exp(PI * x / 8.0) / libm::sqrt(2.0 * x) * theta4;
    Ok(libm::fabs(lhs - rhs))
}

/// Solves `e^u = 1 + 2u` for the maximizer of `(1 − e^{−u}) / √u` and returns
/// `Γ_χ = sqrt(π/2) · (1 − e^{−u*}) / √u*`.
///
/// `g(u) = e^u − 1 − 2u` is convex with its minimum at `ln 2`, so `[ln 2, 10]`
/// brackets the unique positive root and `g` is increasing on it. Bisection
/// shrinks the bracket, then Newton steps finish; a Newton step leaving the
/// bracket falls back to bisection.
pub fn gamma_chi(tol: f64) -> Result<GammaChiResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::OutOfDomain {
            what: "tol",
            value: tol,
            expected: "(0, inf)",
        });
    }
    let g = |u: f64| libm::expm1(u) - 2.0 * u;
    let mut lo = core::f64::consts::LN_2;
    let mut hi = 10.0;
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut u = 0.5 * (lo + hi);
    for _ in 0..100 {
        let gu = g(u);
        if gu < 0.0 {
            lo = u;
        } else {
            hi = u;
        }
        let step = gu / (libm::exp(u) - 2.0);
        let mut next = u - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let moved = libm::fabs(next - u);
        u = next;
        if moved <= tol * u || hi - lo <= tol * u {
            break;
        }
    }
    let inner_max = -libm::expm1(-u) / libm::sqrt(u);
    Ok(GammaChiResult {
        value: libm::sqrt(PI / 2.0) * inner_max,
        u_star: u,
        inner_max,
        stationarity_residual: libm::fabs(libm::exp(u) - 1.0 - 2.0 * u),
    })
}

/// Global maximum of `(1 − t) θ(t^γ)` over `t ∈ (0, 1)`, as `(t*, value)`.
pub fn one_minus_t_theta_max(gamma: f64, tol: f64) -> Result<(f64, f64)> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::OutOfDomain {
            what: "gamma",
            value: gamma,
            expected: "(0, 1]",
        });
    }
    let search = GridGolden::with_tol(tol);
    let best = search.try_maximize(0.0, 1.0, |t| {
        theta_full(t, gamma, 1e-16).map(|s| (1.0 - t) * s.value)
    })?;
    Ok((best.x, best.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_theta_examples() {
        assert_eq!(theta_truncated(0.0, 1.0, 5).unwrap(), 1.0);
        assert_eq!(theta_truncated(1.0, 0.37, 9).unwrap(), 9.0);
        assert_eq!(theta_truncated(0.25, 0.5, 3).unwrap(), 1.625);
    }

    #[test]
    fn truncated_theta_rejects_bad_input() {
        assert!(matches!(
            theta_truncated(0.5, 1.0, 0),
            Err(Error::OutOfRange { what: "l", .. })
        ));
        assert!(theta_truncated(1.5, 1.0, 3).is_err());
        assert!(theta_truncated(-0.1, 1.0, 3).is_err());
    }

    #[test]
    fn exponential_sum_matches_recurrence() {
        let sum = ExponentialSum::truncated_theta(0.7, 12).unwrap();
        for &t in &[0.0, 0.1, 0.55, 0.93, 1.0] {
            let direct = sum.eval(t).unwrap();
            let fast = theta_truncated(t, 0.7, 12).unwrap();
            assert!((direct - fast).abs() < 1e-14, "t = {t}");
        }
        assert_eq!(
            ExponentialSum::geometric(4).unwrap().eval(0.5).unwrap(),
            1.875
        );
    }

    #[test]
    fn exponential_sum_invariants() {
        assert!(ExponentialSum::new(alloc::vec![(1.0, 0.0), (1.0, 0.0)]).is_err());
        assert!(ExponentialSum::new(alloc::vec![(1.0, 2.0), (1.0, 1.0)]).is_err());
        assert!(ExponentialSum::new(alloc::vec![(f64::NAN, 1.0)]).is_err());
        assert!(ExponentialSum::new(alloc::vec![(1.0, -1.0)]).is_err());
    }

    #[test]
    fn full_theta_at_half() {
        // 50-digit reference: 1.64163256065515386629…
        let s = theta_full(0.5, 1.0, 1e-15).unwrap();
        assert!((s.value - 1.641_632_560_655_153_9).abs() < 1e-15);
        assert!(s.tail_bound < 1e-15);
        assert_eq!(theta_full(0.0, 1.0, 1e-15).unwrap().value, 1.0);
    }

    #[test]
    fn full_theta_rejects_one() {
        assert!(theta_full(1.0, 1.0, 1e-12).is_err());
        assert!(theta_full(0.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn jacobi_values() {
        let three = JacobiKind::Three;
        assert_eq!(jacobi_theta(three, 0.0).unwrap(), 1.0);
        assert_eq!(jacobi_theta(JacobiKind::Four, 0.0).unwrap(), 1.0);
        // 1 + 2(0.1) + 2(0.1)^4 + 2(0.1)^9 + 2(0.1)^16
        assert!((jacobi_theta(three, 0.1).unwrap() - 1.200_200_002).abs() < 1e-15);
        assert!((jacobi_theta(JacobiKind::Four, 0.1).unwrap() - 0.800_199_998).abs() < 1e-15);
        assert!(
            (jacobi_theta(JacobiKind::Two, 0.1).unwrap() - 1.135_930_601_568_280_2).abs() < 1e-14
        );
        assert!(jacobi_theta(three, 1.0).is_err());
        assert!(JacobiKind::try_from(1).is_err());
    }

    #[test]
    fn functional_equation_holds_at_examples() {
        for &x in &[0.5, 1.0, 2.0] {
            assert!(functional_equation_residual(x).unwrap() < 1e-12, "x = {x}");
        }
        assert!(functional_equation_residual(0.0).is_err());
    }

    #[test]
    fn gamma_chi_constants() {
        let g = gamma_chi(1e-15).unwrap();
        assert!((g.value - 0.799_830_849_8).abs() < 1e-9);
        assert!((g.u_star - 1.25643).abs() < 1e-5);
        assert!((g.inner_max - 0.638_172_686).abs() < 1e-9);
        assert!(g.stationarity_residual < 1e-10);
        assert!(gamma_chi(0.0).is_err());
    }

    #[test]
    fn one_minus_t_theta_examples() {
        let g = gamma_chi(1e-15).unwrap().value;
        let (_, half) = one_minus_t_theta_max(0.5, 1e-12).unwrap();
        assert!(half > 1.0);
        assert!(half >= g * core::f64::consts::SQRT_2);
        let (_, one) = one_minus_t_theta_max(1.0, 1e-12).unwrap();
        assert!(one >= g);
        assert!(one_minus_t_theta_max(0.0, 1e-12).is_err());
    }
}
