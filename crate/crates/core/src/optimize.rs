//! One-dimensional global maximization on a bounded interval.
//!
//! None of the objectives in this crate is known to be unimodal, so the search
//! scans a uniform grid, keeps the best few grid-local maxima, and refines each
//! one with golden-section search inside its neighbouring grid cells.

use alloc::vec::Vec;
use core::convert::Infallible;

/// Default number of interior grid points.
pub const DEFAULT_GRID_POINTS: usize = 4096;
/// Default number of distinct local maxima refined.
pub const DEFAULT_RESTARTS: usize = 3;

const INV_PHI: f64 = 0.618_033_988_749_894_8;
const MAX_GOLDEN_ITERATIONS: usize = 400;

/// Location and value of a maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

/// Grid scan followed by golden-section refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridGolden {
    /// Interior grid points; endpoints are never evaluated.
    pub grid_points: usize,
    /// How many distinct grid-local maxima get refined.
    pub restarts: usize,
    /// Absolute bracket width at which golden-section stops.
    pub tol: f64,
}

impl Default for GridGolden {
    fn default() -> Self {
        GridGolden {
            grid_points: DEFAULT_GRID_POINTS,
            restarts: DEFAULT_RESTARTS,
            tol: 1e-12,
        }
    }
}

impl GridGolden {
    pub fn with_tol(tol: f64) -> Self {
        GridGolden {
            tol,
            ..GridGolden::default()
        }
    }

    /// Maximizes `f` over the open interval `(lo, hi)`.
    pub fn maximize<F>(&self, lo: f64, hi: f64, mut f: F) -> Maximum
    where
        F: FnMut(f64) -> f64,
    {
        match self.try_maximize::<Infallible, _>(lo, hi, |x| Ok(f(x))) {
            Ok(m) => m,
            Err(never) => match never {},
        }
    }

    /// Like [`GridGolden::maximize`] for objectives that can fail.
    ///
    /// NaN values are treated as `-inf`.
    pub fn try_maximize<E, F>(&self, lo: f64, hi: f64, mut f: F) -> Result<Maximum, E>
    where
        F: FnMut(f64) -> Result<f64, E>,
    {
        let n = self.grid_points.max(3);
        let step = (hi - lo) / (n + 1) as f64;
        let xs: Vec<f64> = (1..=n).map(|i| lo + step * i as f64).collect();
        let mut vs = Vec::with_capacity(n);
        for &x in &xs {
            vs.push(sanitize(f(x)?));
        }

        // Grid-local maxima (plateaus contribute their first point).
        let mut candidates: Vec<usize> = (0..n)
            .filter(|&i| {
                let left = if i == 0 { f64::NEG_INFINITY } else { vs[i - 1] };
                let right = if i + 1 == n {
                    f64::NEG_INFINITY
                } else {
                    vs[i + 1]
                };
                vs[i] > left && vs[i] >= right
            })
            .collect();
        if candidates.is_empty() {
            candidates.push(argmax(&vs));
        }
        candidates.sort_by(|&a, &b| vs[b].total_cmp(&vs[a]).then(a.cmp(&b)));
        candidates.truncate(self.restarts.max(1));

        let grid_best = argmax(&vs);
        let mut best = Maximum {
            x: xs[grid_best],
            value: vs[grid_best],
        };
        for &i in &candidates {
            let a = if i == 0 { lo } else { xs[i - 1] };
            let b = if i + 1 == n { hi } else { xs[i + 1] };
            let refined = golden_section(a, b, self.tol, &mut f)?;
            if refined.value > best.value {
                best = refined;
            }
        }
        Ok(best)
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

fn argmax(vs: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in vs.iter().enumerate() {
        if *v > vs[best] {
            best = i;
        }
    }
    best
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
///
/// Returns the best point actually evaluated, so the reported value is always
/// a genuine function value.
pub fn golden_section<E, F>(mut a: f64, mut b: f64, tol: f64, f: &mut F) -> Result<Maximum, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = sanitize(f(c)?);
    let mut fd = sanitize(f(d)?);
    let mut best = if fc >= fd {
        Maximum { x: c, value: fc }
    } else {
        Maximum { x: d, value: fd }
    };

    let mut iterations = 0;
    while (b - a) > tol && iterations < MAX_GOLDEN_ITERATIONS {
        iterations += 1;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = sanitize(f(c)?);
            if fc > best.value {
                best = Maximum { x: c, value: fc };
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = sanitize(f(d)?);
            if fd > best.value {
                best = Maximum { x: d, value: fd };
            }
        }
        if c >= d {
            break;
        }
    }
    Ok(best)
}
