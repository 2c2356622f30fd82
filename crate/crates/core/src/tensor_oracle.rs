//! Brute-force oracles for the slice-rank argument.
//!
//! - `H_k(x_1, …, x_k) = Σ_{σ ∈ S_k, σ not a k-cycle} sgn(σ) [x constant on the cycles of σ]`
//!   is 1 on distinct tuples, 0 on partially coincident ones, and
//!   `(−1)^k (k − 1)!` on the diagonal.
//! - Grouping permutations by their cycle partition writes `H_k` as
//!   `Σ_P c_P ∏_{A∈P} δ_A` over nontrivial set partitions `P`.
//! - `F_r = ∏_{i<j} (1 − (½‖x_i − x_j‖²)^{p−1})` over `F_p` tests whether all
//!   pairwise half squared distances vanish mod `p`, and `J_k = H_{k+1} F_{k+1}`
//!   detects distinct `(k+1)`-tuples with every distance forbidden.
//!
//! Permutations and partitions act on `{0, …, k−1}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::lattice_combinatorics::{count_box, next_permutation};
use crate::primes::{is_prime, next_prime, pow_mod};

/// Largest `k` for which `S_k` is enumerated.
pub const MAX_SYMMETRIC_DEGREE: usize = 7;
/// Largest ground set searched by [`clique_bound_check`].
pub const MAX_GROUND_SET: usize = 24;

/// A bijection of `{0, …, k−1}` given by its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return Err(Error::NotBijective);
            }
            seen[i] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            image: (0..k).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(k: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..k).collect();
        let mut used = vec![false; k];
        for cycle in cycles {
            for (pos, &i) in cycle.iter().enumerate() {
                if i >= k || used[i] {
                    return Err(Error::NotBijective);
                }
                used[i] = true;
                image[i] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { image })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// Cycles, each starting at its smallest element, ordered by that element.
    /// Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.image.len()];
        let mut out = Vec::new();
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.image[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.image[i];
            }
            out.push(cycle);
        }
        out
    }

    /// `+1` or `−1`: `(−1)^{k − #cycles}`.
    pub fn sign(&self) -> i64 {
        if (self.image.len() - self.cycles().len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// A single cycle through all `k` points.
    pub fn is_k_cycle(&self) -> bool {
        let k = self.image.len();
        k > 0 && self.cycles().len() == 1
    }
}

/// All `k!` permutations of `{0, …, k−1}` in lexicographic order.
pub fn permutations(k: usize) -> Result<Vec<Permutation>> {
    check_degree(k, 1)?;
    let mut current: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation {
            image: current.clone(),
        });
        if !next_permutation(&mut current) {
            return Ok(out);
        }
    }
}

fn check_degree(k: usize, min: usize) -> Result<()> {
    if (min..=MAX_SYMMETRIC_DEGREE).contains(&k) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "k",
            value: k as u64,
            min: min as u64,
            max: MAX_SYMMETRIC_DEGREE as u64,
        })
    }
}

/// Disjoint nonempty blocks covering `{0, …, k−1}`, stored canonically (each
/// block sorted, blocks ordered by their smallest element).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; k];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition);
            }
            for &i in block {
                if i >= k || seen[i] {
                    return Err(Error::InvalidPartition);
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPartition);
        }
        Ok(Self::canonical(blocks))
    }

    fn canonical(mut blocks: Vec<Vec<usize>>) -> Self {
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { blocks }
    }

    /// The cycles of `sigma`, as blocks.
    pub fn of_permutation(sigma: &Permutation) -> Self {
        Self::canonical(sigma.cycles())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// At least two blocks.
    pub fn is_nontrivial(&self) -> bool {
        self.blocks.len() >= 2
    }

    /// `∏_{A} δ_A(xs)`: 1 when `xs` is constant on every block.
    pub fn indicator<T: PartialEq>(&self, xs: &[T]) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&i| xs[i] == xs[b[0]]))
    }
}

/// `H_k(xs)` for `k = xs.len() ∈ 2..=7`, by summing over `S_k`.
pub fn h_k_eval<T: PartialEq>(xs: &[T]) -> Result<i64> {
    check_degree(xs.len(), 2)?;
    let mut total = 0;
    for sigma in permutations(xs.len())? {
        if sigma.is_k_cycle() {
            continue;
        }
        let constant = sigma
            .cycles()
            .iter()
            .all(|c| c.iter().all(|&i| xs[i] == xs[c[0]]));
        if constant {
            total += sigma.sign();
        }
    }
    Ok(total)
}

/// `c_P = Σ sgn(σ)` over non-`k`-cycles `σ` whose cycles form `P`.
///
/// The one-block partition never appears, since its only permutations are the
/// excluded `k`-cycles.
pub fn partition_coefficients(k: usize) -> Result<BTreeMap<SetPartition, i64>> {
    check_degree(k, 2)?;
    let mut out = BTreeMap::new();
    for sigma in permutations(k)? {
        if sigma.is_k_cycle() {
            continue;
        }
        *out.entry(SetPartition::of_permutation(&sigma)).or_insert(0) += sigma.sign();
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// `Σ_P c_P ∏_{A∈P} δ_A(xs)`.
pub fn reconstruct<T: PartialEq>(coeffs: &BTreeMap<SetPartition, i64>, xs: &[T]) -> i64 {
    coeffs
        .iter()
        .filter(|(p, _)| p.indicator(xs))
        .map(|(_, &c)| c)
        .sum()
}

/// Integer points with even pairwise squared distances, a prime `p`, and a
/// distance count `m` such that every half squared distance is below `(m + 1)p`.
///
/// Under those conditions `½‖x − y‖² ≡ 0 (mod p)` exactly when
/// `‖x − y‖ ∈ √(2p) {0, 1, √2, …, √m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PointConfig {
    points: Vec<Vec<i64>>,
    p: u64,
    m: u64,
}

impl PointConfig {
    pub fn new(points: Vec<Vec<i64>>, p: u64, m: u64) -> Result<Self> {
        if let Some(first) = points.first() {
            if let Some(bad) = points.iter().find(|x| x.len() != first.len()) {
                return Err(Error::ShapeMismatch {
                    what: "point dimension",
                    expected: first.len(),
                    found: bad.len(),
                });
            }
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::OutOfRange {
                what: "m",
                value: 0,
                min: 1,
                max: u64::MAX,
            });
        }
        let limit = (m as u128 + 1) * p as u128;
        let mut half_sq_diameter = 0;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let sq = squared_distance(&points[i], &points[j])?;
                if sq % 2 != 0 {
                    return Err(Error::OddSquaredDistance { i, j });
                }
                half_sq_diameter = half_sq_diameter.max(sq / 2);
            }
        }
        if half_sq_diameter >= limit {
            return Err(Error::DiameterTooLarge {
                half_sq_diameter,
                limit,
            });
        }
        Ok(PointConfig { points, p, m })
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `½‖x_i − x_j‖²` (exact; validated even at construction).
    pub fn half_sq_distance(&self, i: usize, j: usize) -> u128 {
        squared_distance(&self.points[i], &self.points[j]).unwrap_or(u128::MAX) / 2
    }

    /// `½‖x_i − x_j‖² ∈ {p, 2p, …, mp}`.
    pub fn is_forbidden_pair(&self, i: usize, j: usize) -> bool {
        let h = self.half_sq_distance(i, j);
        let p = self.p as u128;
        h != 0 && h % p == 0 && h / p <= self.m as u128
    }
}

fn squared_distance(x: &[i64], y: &[i64]) -> Result<u128> {
    x.iter().zip(y).try_fold(0u128, |acc, (&a, &b)| {
        let d = (a as i128 - b as i128).unsigned_abs();
        d.checked_mul(d)
            .and_then(|sq| acc.checked_add(sq))
            .ok_or(Error::Overflow("squared distance"))
    })
}

/// `F_r` on the points selected by `subset` (indices may repeat), as a residue mod `p`.
pub fn f_r_eval(cfg: &PointConfig, subset: &[usize]) -> Result<u64> {
    if let Some(&index) = subset.iter().find(|&&i| i >= cfg.len()) {
        return Err(Error::IndexOutOfBounds {
            index,
            len: cfg.len(),
        });
    }
    let p = cfg.p;
    let mut acc = 1u64;
    for (a, &i) in subset.iter().enumerate() {
        for &j in &subset[a + 1..] {
            let h = (cfg.half_sq_distance(i, j) % p as u128) as u64;
            let factor = (1 + p - pow_mod(h, p - 1, p)) % p;
            acc = (acc as u128 * factor as u128 % p as u128) as u64;
        }
    }
    Ok(acc)
}

/// `J_k = H_{k+1} F_{k+1}` on a configuration of exactly `k + 1` points, mod `p`.
///
/// Points are compared by exact coordinate equality. Needs `1 ≤ k ≤ 5` and `p > k`.
pub fn j_k_eval(cfg: &PointConfig, k: usize) -> Result<u64> {
    if !(1..=MAX_SYMMETRIC_DEGREE - 2).contains(&k) {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as u64,
            min: 1,
            max: (MAX_SYMMETRIC_DEGREE - 2) as u64,
        });
    }
    if cfg.len() != k + 1 {
        return Err(Error::ShapeMismatch {
            what: "point count",
            expected: k + 1,
            found: cfg.len(),
        });
    }
    if cfg.p <= k as u64 {
        return Err(Error::PrimeTooSmall { p: cfg.p, k });
    }
    let h = h_k_eval(cfg.points())?;
    let indices: Vec<usize> = (0..=k).collect();
    let f = f_r_eval(cfg, &indices)?;
    let h_mod = h.rem_euclid(cfg.p as i64) as u64;
    Ok((h_mod as u128 * f as u128 % cfg.p as u128) as u64)
}

/// Which case of the `J_k` value table a configuration falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SimplexCase {
    /// Distinct points, every pair at a forbidden distance: `J_k = 1`.
    Simplex,
    /// All points equal: `J_k = ±k!`.
    Diagonal,
    /// Anything else: `J_k = 0`.
    Other,
}

impl SimplexCase {
    pub fn classify(cfg: &PointConfig) -> Self {
        let n = cfg.len();
        if n > 0 && cfg.points().iter().all(|x| *x == cfg.points()[0]) {
            return SimplexCase::Diagonal;
        }
        let all_forbidden = (0..n).all(|i| (i + 1..n).all(|j| cfg.is_forbidden_pair(i, j)));
        if all_forbidden {
            SimplexCase::Simplex
        } else {
            SimplexCase::Other
        }
    }

    /// Whether `value` is consistent with this case for `J_k` mod `p`.
    pub fn accepts(&self, value: u64, k: usize, p: u64) -> bool {
        match self {
            SimplexCase::Simplex => value == 1 % p,
            SimplexCase::Other => value == 0,
            SimplexCase::Diagonal => {
                let fact = (1..=k as u64).fold(1u64, |acc, i| acc * i % p);
                value == fact || value == (p - fact) % p
            }
        }
    }
}

/// Outcome of the exact clique-free subset search.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CliqueReport {
    pub n: usize,
    pub l: u32,
    pub m: u64,
    pub k: usize,
    pub p: u64,
    pub ground_set_size: usize,
    /// Largest `½‖x − y‖²` over the ground set.
    pub d_max: u128,
    /// Size of the largest subset without `k + 1` distinct points pairwise at
    /// forbidden distances.
    pub max_clique_free: usize,
    /// `2^{k+1} · #{v ∈ {0,…,l}^n : Σ v_i ≤ k(p − 1)}`.
    pub bound: BigUint,
    /// Search nodes visited.
    pub nodes: u64,
}

impl CliqueReport {
    pub fn holds(&self) -> bool {
        BigUint::from(self.max_clique_free) <= self.bound
    }
}

/// Points of `{0, …, l}^n` with even coordinate sum, so that every squared
/// distance between them is even.
pub fn even_box_points(n: usize, l: u32) -> Vec<Vec<i64>> {
    let side = l as usize + 1;
    let total = side.pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let c = (code % side) as i64;
                    code /= side;
                    c
                })
                .collect::<Vec<i64>>()
        })
        .filter(|v| v.iter().sum::<i64>() % 2 == 0)
        .collect()
}

/// [`clique_bound_check_on`] with the ground set [`even_box_points`]`(n, l)`.
pub fn clique_bound_check(
    n: usize,
    l: u32,
    m: u64,
    k: usize,
    node_budget: u64,
) -> Result<CliqueReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            min: 1,
            max: 3,
        });
    }
    if l > 2 {
        return Err(Error::OutOfRange {
            what: "l",
            value: l as u64,
            min: 0,
            max: 2,
        });
    }
    clique_bound_check_on(even_box_points(n, l), l, m, k, node_budget)
}

/// Largest subset of `points ⊆ {0,…,l}^n` with no `k + 1` distinct points
/// pairwise at distances in `√(2p) A_m`, compared with the counting bound.
///
/// `p` is the smallest prime with `p > k` and `(m + 1)p > d_max`.
pub fn clique_bound_check_on(
    points: Vec<Vec<i64>>,
    l: u32,
    m: u64,
    k: usize,
    node_budget: u64,
) -> Result<CliqueReport> {
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "k",
            value: 0,
            min: 1,
            max: u64::MAX,
        });
    }
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "m",
            value: 0,
            min: 1,
            max: u64::MAX,
        });
    }
    if points.len() > MAX_GROUND_SET {
        return Err(Error::BudgetExceeded {
            needed: 1u128 << points.len(),
            budget: 1u128 << MAX_GROUND_SET,
        });
    }
    let n = points.first().map_or(0, Vec::len);
    for x in &points {
        if x.len() != n {
            return Err(Error::ShapeMismatch {
                what: "point dimension",
                expected: n,
                found: x.len(),
            });
        }
        if let Some(&c) = x.iter().find(|&&c| c < 0 || c > l as i64) {
            return Err(Error::OutOfDomain {
                what: "coordinate",
                value: c as f64,
                expected: "{0, ..., l}",
            });
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::DuplicatePoint { i, j });
            }
        }
    }

    let mut d_max = 0u128;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            d_max = d_max.max(squared_distance(&points[i], &points[j])? / 2);
        }
    }
    let threshold = u64::try_from(d_max / (m as u128 + 1)).map_err(|_| Error::Overflow("d_max"))?;
    let p = next_prime(threshold.max(k as u64))?;
    let ground_set_size = points.len();
    let cfg = PointConfig::new(points, p, m)?;

    let size = cfg.len();
    let adjacency: Vec<u32> = (0..size)
        .map(|i| {
            (0..size)
                .filter(|&j| i != j && cfg.is_forbidden_pair(i, j))
                .fold(0, |mask, j| mask | 1 << j)
        })
        .collect();

    let mut search = CliqueFree {
        adjacency: &adjacency,
        clique: k + 1,
        best: 0,
        nodes: 0,
        budget: node_budget,
    };
    search.run(0, 0, 0)?;

    let degree_cap = k as u64 * (p - 1);
    let bound = (BigUint::from(1u32) << (k + 1)) * count_box(n as u32, l, degree_cap);
    Ok(CliqueReport {
        n,
        l,
        m,
        k,
        p,
        ground_set_size,
        d_max,
        max_clique_free: search.best,
        bound,
        nodes: search.nodes,
    })
}

struct CliqueFree<'a> {
    adjacency: &'a [u32],
    clique: usize,
    best: usize,
    nodes: u64,
    budget: u64,
}

impl CliqueFree<'_> {
    fn run(&mut self, next: usize, chosen: u32, count: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                needed: self.nodes as u128,
                budget: self.budget as u128,
            });
        }
        let remaining = self.adjacency.len() - next;
        if count + remaining <= self.best {
            return Ok(());
        }
        if next == self.adjacency.len() {
            self.best = count;
            return Ok(());
        }
        // Adding `next` is safe unless it completes a clique with chosen points.
        let neighbours = chosen & self.adjacency[next];
        if !has_clique(self.adjacency, neighbours, self.clique - 1) {
            self.run(next + 1, chosen | 1 << next, count + 1)?;
        }
        self.run(next + 1, chosen, count)
    }
}

/// Whether `candidates` contains `size` pairwise adjacent vertices.
fn has_clique(adjacency: &[u32], candidates: u32, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if (candidates.count_ones() as usize) < size {
        return false;
    }
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique(adjacency, rest & adjacency[v], size - 1) {
            return true;
        }
    }
    false
}
