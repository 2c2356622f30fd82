//! Flat output records, one per result.

use chromabound_core::lattice_theta::{double_cap_compare, DOUBLE_CAP_LOWER, DOUBLE_CAP_UPPER};
use chromabound_core::{BoundResult, GammaChiResult, MuResult};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsRecord {
    pub gamma_chi: f64,
    pub u_star: f64,
    pub inner_max: f64,
    pub stationarity_residual: f64,
    /// `1/√2`
    pub double_cap_lower: f64,
    /// `√3/2`
    pub double_cap_upper: f64,
    /// `2(√1 + 1)`
    pub kupavskii_base_m1: f64,
    pub tolerance: f64,
}

impl ConstantsRecord {
    pub fn new(g: GammaChiResult, kupavskii_base_m1: f64, tolerance: f64) -> Self {
        ConstantsRecord {
            gamma_chi: g.value,
            u_star: g.u_star,
            inner_max: g.inner_max,
            stationarity_residual: g.stationarity_residual,
            double_cap_lower: DOUBLE_CAP_LOWER,
            double_cap_upper: DOUBLE_CAP_UPPER,
            kupavskii_base_m1,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub m: u32,
    pub k: u32,
    pub gamma: f64,
    pub l_star: usize,
    pub t_star: f64,
    pub value: f64,
    /// Bracket width at which the `t` search stopped.
    pub tolerance: f64,
    pub trivial_regime: bool,
}

impl BoundRecord {
    pub fn new(r: BoundResult, tolerance: f64) -> Self {
        BoundRecord {
            m: r.m,
            k: r.k,
            gamma: r.gamma,
            l_star: r.l_star,
            t_star: r.t_star,
            value: r.value,
            tolerance,
            trivial_regime: r.trivial_regime,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuRecord {
    pub lattice: String,
    pub t_star: f64,
    pub mu: f64,
    pub relative_tail_bound: f64,
    pub truncation: Option<usize>,
    pub tolerance: f64,
    /// Comparison with the known bound `√3/2`.
    pub verdict: String,
}

impl MuRecord {
    pub fn new(r: MuResult, tolerance: f64) -> Self {
        let verdict = double_cap_compare(r.mu).map_or_else(|e| e.to_string(), |v| v.to_string());
        MuRecord {
            lattice: r.lattice.to_string(),
            t_star: r.t_star,
            mu: r.mu,
            relative_tail_bound: r.relative_tail_bound,
            truncation: r.truncation,
            tolerance,
            verdict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
}
