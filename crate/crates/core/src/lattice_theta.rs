//! Theta series of even lattices and the double cap constants
//! `μ_Λ = (max_{0<t<1} θ_Λ(t)(1 − t)^d)^{−1/d}`, with `θ_Λ(t) = Σ_{λ∈Λ} t^{‖λ‖²}`.
//!
//! `E8` and Leech coefficients come from exact integer q-expansions:
//! `N_j = 240 σ₃(j)` for `E8`, and `N_j = (65520/691)(σ₁₁(j) − τ(j))` for the
//! Leech lattice, where `τ` is read off `Δ = q ∏_{n≥1} (1 − q^n)^24`. `D_n` and
//! the `n → ∞` limit `μ_Z` use `θ3` and `θ4` in closed form.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::optimize::GridGolden;
use crate::special_functions::{
    check_unit_half_open, jacobi_theta, jacobi_theta_series, JacobiKind,
};

/// Default truncation index for the `E8` and Leech series.
pub const DEFAULT_TRUNCATION: usize = 512;
/// Smallest truncation index accepted by the front ends.
pub const MIN_TRUNCATION: usize = 16;
/// Raigorodskii's upper bound `√3/2` for the double cap constant.
pub const DOUBLE_CAP_UPPER: f64 = 0.866_025_403_784_438_6;
/// The double cap lower bound `1/√2`.
pub const DOUBLE_CAP_LOWER: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// The lattices this crate knows how to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(into = "String", try_from = "String")
)]
pub enum LatticeLabel {
    /// The `n → ∞` limit of `D_n`, computed from `θ3` alone.
    Integers,
    /// `D_n = {v ∈ Z^n : Σ v_i even}`.
    Dn(u32),
    E8,
    Leech,
}

impl LatticeLabel {
    /// Ambient dimension; `None` for the limit lattice.
    pub fn dim(&self) -> Option<usize> {
        match self {
            LatticeLabel::Integers => None,
            LatticeLabel::Dn(n) => Some(*n as usize),
            LatticeLabel::E8 => Some(8),
            LatticeLabel::Leech => Some(24),
        }
    }
}

impl fmt::Display for LatticeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeLabel::Integers => f.write_str("zn"),
            LatticeLabel::Dn(n) => write!(f, "dn:{n}"),
            LatticeLabel::E8 => f.write_str("e8"),
            LatticeLabel::Leech => f.write_str("leech"),
        }
    }
}

/// Error for an unrecognized lattice label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownLattice(pub String);

impl fmt::Display for UnknownLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown lattice `{}` (expected zn, dn:<n>, e8, or leech)",
            self.0
        )
    }
}

impl core::error::Error for UnknownLattice {}

impl FromStr for LatticeLabel {
    type Err = UnknownLattice;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "zn" => Ok(LatticeLabel::Integers),
            "e8" => Ok(LatticeLabel::E8),
            "leech" => Ok(LatticeLabel::Leech),
            other => other
                .strip_prefix("dn:")
                .and_then(|n| n.parse::<u32>().ok())
                .filter(|&n| n >= 1)
                .map(LatticeLabel::Dn)
                .ok_or_else(|| UnknownLattice(s.to_string())),
        }
    }
}

impl From<LatticeLabel> for String {
    fn from(label: LatticeLabel) -> String {
        label.to_string()
    }
}

impl TryFrom<String> for LatticeLabel {
    type Error = UnknownLattice;

    fn try_from(s: String) -> core::result::Result<Self, Self::Error> {
        s.parse()
    }
}

/// Vector counts `N_j` by squared norm `2j`, for `j = 0..=K`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "ThetaSeriesRepr")
)]
pub struct ThetaSeries {
    label: LatticeLabel,
    dim: usize,
    truncation: usize,
    coeffs: Vec<u128>,
    growth_exponent: f64,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct ThetaSeriesRepr {
    label: LatticeLabel,
    dim: usize,
    truncation: usize,
    coeffs: Vec<u128>,
    growth_exponent: f64,
}

#[cfg(feature = "serde")]
impl TryFrom<ThetaSeriesRepr> for ThetaSeries {
    type Error = Error;

    fn try_from(r: ThetaSeriesRepr) -> Result<Self> {
        if r.coeffs.len() != r.truncation + 1 {
            return Err(Error::ShapeMismatch {
                what: "coefficient count",
                expected: r.truncation + 1,
                found: r.coeffs.len(),
            });
        }
        ThetaSeries::new(r.label, r.dim, r.coeffs, r.growth_exponent)
    }
}

impl ThetaSeries {
    /// Wraps precomputed coefficients; `N_0` must be 1 and `K ≥ 1`.
    pub fn new(
        label: LatticeLabel,
        dim: usize,
        coeffs: Vec<u128>,
        growth_exponent: f64,
    ) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::ShapeMismatch {
                what: "coefficient count",
                expected: 2,
                found: coeffs.len(),
            });
        }
        if coeffs[0] != 1 {
            return Err(Error::ShapeMismatch {
                what: "N_0",
                expected: 1,
                found: coeffs[0] as usize,
            });
        }
        if dim == 0 {
            return Err(Error::ShapeMismatch {
                what: "dimension",
                expected: 1,
                found: 0,
            });
        }
        if !(growth_exponent >= 0.0 && growth_exponent.is_finite()) {
            return Err(Error::OutOfDomain {
                what: "growth_exponent",
                value: growth_exponent,
                expected: "[0, inf)",
            });
        }
        Ok(ThetaSeries {
            label,
            dim,
            truncation: coeffs.len() - 1,
            coeffs,
            growth_exponent,
        })
    }

    pub fn label(&self) -> LatticeLabel {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The truncation index `K`.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    pub fn growth_exponent(&self) -> f64 {
        self.growth_exponent
    }

    /// `A = 2 max_{1≤j≤K} N_j / j^g`, so that `N_j ≤ A j^g` is assumed for `j > K`.
    pub fn growth_constant(&self) -> f64 {
        let g = self.growth_exponent;
        let fitted = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &n)| n as f64 / libm::pow(j as f64, g))
            .fold(0.0, f64::max);
        2.0 * fitted
    }

    /// Truncated sum `Σ_{j≤K} N_j t^{2j}` (Horner; all terms are nonnegative).
    pub fn eval(&self, t: f64) -> Result<f64> {
        check_unit_half_open(t, "t")?;
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: f64) -> f64 {
        let r = t * t;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &n| acc * r + n as f64)
    }

    /// Bound on `Σ_{j>K} N_j t^{2j}` under `N_j ≤ A j^g`.
    ///
    /// With `r = t²`, consecutive terms of `A j^g r^j` for `j > K` have ratio at
    /// most `ρ = ((K+2)/(K+1))^g r`, so the tail is at most
    /// `A (K+1)^g r^{K+1} / (1 − ρ)`. Infinite when `ρ ≥ 1`.
    pub fn tail_bound(&self, t: f64) -> Result<f64> {
        check_unit_half_open(t, "t")?;
        Ok(self.tail_bound_unchecked(t))
    }

    fn tail_bound_unchecked(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let k1 = (self.truncation + 1) as f64;
        let g = self.growth_exponent;
        let ln_r = 2.0 * libm::log(t);
        let rho = libm::exp(g * libm::log((k1 + 1.0) / k1) + ln_r);
        if rho >= 1.0 {
            return f64::INFINITY;
        }
        let a = self.growth_constant();
        if a == 0.0 {
            return 0.0;
        }
        libm::exp(libm::log(a) + g * libm::log(k1) + k1 * ln_r) / (1.0 - rho)
    }

    /// Largest `t` with `tail_bound(t) ≤ rel_tol · eval(t)`, by bisection.
    pub fn certified_limit(&self, rel_tol: f64) -> f64 {
        let ok = |t: f64| self.tail_bound_unchecked(t) <= rel_tol * self.eval_unchecked(t);
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if ok(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        lo
    }
}

/// `μ_Λ` with its maximizer and the tail certificate at the maximizer.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MuResult {
    pub lattice: LatticeLabel,
    pub t_star: f64,
    pub mu: f64,
    /// Upper bound on the neglected part of `θ_Λ(t_star)`, relative to its value.
    pub relative_tail_bound: f64,
    /// Truncation index of the series, when one was used.
    pub truncation: Option<usize>,
}

/// Outcome of comparing a `μ` value with the best known upper bound `√3/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum DoubleCapVerdict {
    /// `μ < √3/2`: a new upper bound for the double cap constant.
    Improvement,
    NoImprovement,
}

impl fmt::Display for DoubleCapVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DoubleCapVerdict::Improvement => "improvement",
            DoubleCapVerdict::NoImprovement => "no improvement",
        })
    }
}

/// `σ_p(j) = Σ_{d | j} d^p` for `j = 0..=k` (with `σ_p(0) = 0`).
pub fn divisor_power_sums(power: u32, k: usize) -> Result<Vec<u128>> {
    let mut sums = vec![0u128; k + 1];
    for d in 1..=k {
        let dp = (d as u128)
            .checked_pow(power)
            .ok_or(Error::Overflow("divisor power"))?;
        for multiple in (d..=k).step_by(d) {
            sums[multiple] = sums[multiple]
                .checked_add(dp)
                .ok_or(Error::Overflow("divisor sum"))?;
        }
    }
    Ok(sums)
}

/// Truncated product of two power series, degrees `0..len`.
fn mul_truncated(a: &[i128], b: &[i128], len: usize) -> Result<Vec<i128>> {
    let mut out = vec![0i128; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            let prod = x.checked_mul(y).ok_or(Error::Overflow("series product"))?;
            out[i + j] = out[i + j]
                .checked_add(prod)
                .ok_or(Error::Overflow("series product"))?;
        }
    }
    Ok(out)
}

/// Ramanujan's `τ(j)` for `j = 0..=k` (with `τ(0) = 0`).
///
/// `∏(1 − q^n)³ = Σ_{m≥0} (−1)^m (2m + 1) q^{m(m+1)/2}` (Jacobi), and squaring
/// three times gives `∏(1 − q^n)^24`, whose `q^{j−1}` coefficient is `τ(j)`.
pub fn ramanujan_tau(k: usize) -> Result<Vec<i128>> {
    let mut tau = vec![0i128; k + 1];
    if k == 0 {
        return Ok(tau);
    }
    let len = k;
    let mut cube = vec![0i128; len];
    let mut m = 0usize;
    loop {
        let e = m * (m + 1) / 2;
        if e >= len {
            break;
        }
        let magnitude = (2 * m + 1) as i128;
        cube[e] = if m % 2 == 0 { magnitude } else { -magnitude };
        m += 1;
    }
    let sixth = mul_truncated(&cube, &cube, len)?;
    let twelfth = mul_truncated(&sixth, &sixth, len)?;
    let eta24 = mul_truncated(&twelfth, &twelfth, len)?;
    tau[1..].copy_from_slice(&eta24);
    Ok(tau)
}

/// Theta series of `E8` through `q^{2K}`: `N_j = 240 σ₃(j)`.
pub fn e8_series(k: usize) -> Result<ThetaSeries> {
    check_truncation(k)?;
    let sigma3 = divisor_power_sums(3, k)?;
    let mut coeffs = Vec::with_capacity(k + 1);
    coeffs.push(1);
    for &s in &sigma3[1..] {
        coeffs.push(
            s.checked_mul(240)
                .ok_or(Error::Overflow("E8 coefficient"))?,
        );
    }
    // σ₃(j) ≤ ζ(3) j³, so the cubic growth model holds exactly.
    ThetaSeries::new(LatticeLabel::E8, 8, coeffs, 3.0)
}

/// Theta series of the Leech lattice through `q^{2K}`:
/// `N_j = (65520/691)(σ₁₁(j) − τ(j))`.
///
/// The division by 691 must be exact; a remainder is reported as
/// [`Error::InexactDivision`].
pub fn leech_series(k: usize) -> Result<ThetaSeries> {
    check_truncation(k)?;
    let sigma11 = divisor_power_sums(11, k)?;
    let tau = ramanujan_tau(k)?;
    let mut coeffs = Vec::with_capacity(k + 1);
    coeffs.push(1u128);
    for j in 1..=k {
        let s = i128::try_from(sigma11[j]).map_err(|_| Error::Overflow("sigma_11"))?;
        let diff = s
            .checked_sub(tau[j])
            .ok_or(Error::Overflow("sigma_11 - tau"))?;
        let scaled = diff
            .checked_mul(65520)
            .ok_or(Error::Overflow("Leech coefficient"))?;
        if scaled % 691 != 0 {
            return Err(Error::InexactDivision {
                index: j,
                divisor: 691,
            });
        }
        let n = u128::try_from(scaled / 691)
            .map_err(|_| Error::Overflow("negative Leech coefficient"))?;
        coeffs.push(n);
    }
    ThetaSeries::new(LatticeLabel::Leech, 24, coeffs, 11.0)
}

fn check_truncation(k: usize) -> Result<()> {
    if k >= 1 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "K",
            value: 0,
            min: 1,
            max: u64::MAX,
        })
    }
}

/// `θ_{D_n}(t) = ½(θ3(t)^n + θ4(t)^n)`.
pub fn dn_theta(n: u32, t: f64) -> Result<f64> {
    check_dn(n)?;
    let three = jacobi_theta(JacobiKind::Three, t)?;
    let four = jacobi_theta(JacobiKind::Four, t)?;
    Ok(0.5 * (libm::pow(three, n as f64) + libm::pow(four, n as f64)))
}

fn check_dn(n: u32) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "n",
            value: 0,
            min: 1,
            max: u32::MAX as u64,
        })
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what: "tol",
            value: tol,
            expected: "(0, 1)",
        })
    }
}

/// `μ_Λ` from a truncated series.
///
/// The search runs over the window where the tail is certified below `tol`
/// relative to the truncated sum. A maximizer in the last grid cell of that
/// window, or no value above the `t → 0` limit, means the truncation is too
/// short, reported as [`Error::TailNotCertified`]. The objective is the per-dimension logarithm
/// `ln θ(t) / d + ln(1 − t)`, so `μ = exp(−max)`.
pub fn mu_lattice(series: &ThetaSeries, tol: f64) -> Result<MuResult> {
    check_tol(tol)?;
    let limit = series.certified_limit(tol);
    let search = GridGolden::with_tol(tol.min(1e-12));
    let cell = limit / (search.grid_points + 1) as f64;
    if limit <= 0.0 {
        return Err(Error::TailNotCertified {
            truncation: series.truncation(),
            t: 0.0,
        });
    }
    let d = series.dim() as f64;
    let best = search.maximize(0.0, limit, |t| {
        libm::log(series.eval_unchecked(t)) / d + libm::log1p(-t)
    });
    // The objective starts at 0 for t -> 0; a maximum that never rises above it
    // means the interior peak lies beyond the certified window.
    if best.x >= limit - cell || best.value <= 0.0 {
        return Err(Error::TailNotCertified {
            truncation: series.truncation(),
            t: limit,
        });
    }
    Ok(MuResult {
        lattice: series.label(),
        t_star: best.x,
        mu: libm::exp(-best.value),
        relative_tail_bound: series.tail_bound_unchecked(best.x) / series.eval_unchecked(best.x),
        truncation: Some(series.truncation()),
    })
}

/// `μ_Z = (max_{0<t<1} θ3(t)(1 − t))^{−1}`.
pub fn mu_z(tol: f64) -> Result<MuResult> {
    check_tol(tol)?;
    let best = GridGolden::with_tol(tol.min(1e-12)).try_maximize(0.0, 1.0, |t| {
        jacobi_theta(JacobiKind::Three, t).map(|v| libm::log(v) + libm::log1p(-t))
    })?;
    let series = jacobi_theta_series(JacobiKind::Three, best.x)?;
    Ok(MuResult {
        lattice: LatticeLabel::Integers,
        t_star: best.x,
        mu: libm::exp(-best.value),
        relative_tail_bound: series.tail_bound / series.value,
        truncation: None,
    })
}

/// `μ_{D_n}` from the closed form of `θ_{D_n}`.
///
/// Uses `ln θ_{D_n} / n = ln θ3 + ln(½(1 + (θ4/θ3)^n)) / n`, which stays finite
/// for any `n`.
pub fn mu_dn(n: u32, tol: f64) -> Result<MuResult> {
    check_dn(n)?;
    check_tol(tol)?;
    let nf = n as f64;
    let best = GridGolden::with_tol(tol.min(1e-12)).try_maximize(0.0, 1.0, |t| {
        let three = jacobi_theta(JacobiKind::Three, t)?;
        let four = jacobi_theta(JacobiKind::Four, t)?;
        let ratio = libm::pow(four / three, nf);
        Ok::<_, Error>(libm::log(three) + libm::log(0.5 * (1.0 + ratio)) / nf + libm::log1p(-t))
    })?;
    // The objective is exactly 0 at t = 0; below that the supremum is the endpoint.
    let (t_star, value) = if best.value > 0.0 {
        (best.x, best.value)
    } else {
        (0.0, 0.0)
    };
    let series = jacobi_theta_series(JacobiKind::Three, t_star)?;
    Ok(MuResult {
        lattice: LatticeLabel::Dn(n),
        t_star,
        mu: libm::exp(-value),
        relative_tail_bound: series.tail_bound / series.value,
        truncation: None,
    })
}

/// Whether `mu` beats the known upper bound `√3/2` (strictly).
pub fn double_cap_compare(mu: f64) -> Result<DoubleCapVerdict> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::OutOfDomain {
            what: "mu",
            value: mu,
            expected: "(0, 1]",
        });
    }
    Ok(if mu < DOUBLE_CAP_UPPER {
        DoubleCapVerdict::Improvement
    } else {
        DoubleCapVerdict::NoImprovement
    })
}

/// Builds the coefficient series for `E8` or Leech; `None` for the lattices
/// handled in closed form.
pub fn series_for(label: LatticeLabel, k: usize) -> Option<Result<ThetaSeries>> {
    match label {
        LatticeLabel::E8 => Some(e8_series(k)),
        LatticeLabel::Leech => Some(leech_series(k)),
        LatticeLabel::Integers | LatticeLabel::Dn(_) => None,
    }
}

/// `μ_Λ` for any supported label; `k` is the truncation for `E8`/Leech.
pub fn mu_for(label: LatticeLabel, k: usize, tol: f64) -> Result<MuResult> {
    match label {
        LatticeLabel::Integers => mu_z(tol),
        LatticeLabel::Dn(n) => mu_dn(n, tol),
        LatticeLabel::E8 => mu_lattice(&e8_series(k)?, tol),
        LatticeLabel::Leech => mu_lattice(&leech_series(k)?, tol),
    }
}
