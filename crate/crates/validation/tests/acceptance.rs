//! Acceptance checks. Runs without the libtest harness so that every line is
//! printed; exits nonzero when any check fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chromabound_core::bound_engine::{best_l, chromatic_lower_bound};
use chromabound_core::lattice_combinatorics::{
    alternating_square_identity, count_box, dmax_bruteforce, dmax_formula, multinomial_lemma_check,
    CompositionProfile,
};
use chromabound_core::lattice_theta::{
    double_cap_compare, e8_series, leech_series, mu_lattice, mu_z, DoubleCapVerdict,
    DEFAULT_TRUNCATION,
};
use chromabound_core::special_functions::{
    functional_equation_residual, gamma_chi, one_minus_t_theta_max,
};
use chromabound_core::tensor_oracle::{
    clique_bound_check_on, even_box_points, h_k_eval, j_k_eval, partition_coefficients,
    reconstruct, PointConfig, SimplexCase,
};
use chromabound_core::BoundQuery;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const OPT_TOL: f64 = 1e-12;
const SEED: u64 = 0x5eed_2024;

struct Outcome {
    ok: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn check(cond: bool, detail: String) -> Outcome {
    Outcome { ok: cond, detail }
}

fn criterion_1() -> Outcome {
    let g = gamma_chi(1e-15).unwrap();
    let ok = (g.value - 0.799_830_849_8).abs() <= 1e-9
        && (g.u_star - 1.256_43).abs() <= 1e-5
        && (g.inner_max - 0.638_172_686).abs() <= 1e-9;
    check(
        ok,
        format!(
            "gamma_chi={:.12} (±1e-9), u*={:.8} (±1e-5), inner max={:.12} (±1e-9)",
            g.value, g.u_star, g.inner_max
        ),
    )
}

const TABLE: [(u32, u32, f64); 14] = [
    (1, 1, 1.239_566),
    (2, 1, 1.466_299),
    (3, 1, 1.667_508),
    (4, 1, 1.848_150),
    (5, 1, 2.013_079),
    (2, 2, 1.118_433),
    (3, 2, 1.239_566),
    (3, 3, 1.083_024),
    (4, 2, 1.356_230),
    (4, 3, 1.158_048),
    (4, 4, 1.063_933),
    (5, 2, 1.466_299),
    (5, 3, 1.239_566),
    (5, 4, 1.118_433),
];

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    let mut l_star_11 = 0;
    for &(m, k, want) in &TABLE {
        let r = chromatic_lower_bound(BoundQuery::new(m, k).unwrap(), OPT_TOL).unwrap();
        let err = (r.value - want).abs();
        worst = worst.max(err);
        if err > 1e-6 {
            bad.push(format!("({m},{k})={:.7}", r.value));
        }
        if (m, k) == (1, 1) {
            l_star_11 = r.l_star;
        }
    }
    check(
        bad.is_empty() && l_star_11 == 3,
        format!(
            "14 cells, max |err|={worst:.2e} (±1e-6), l*(1,1)={l_star_11}{}",
            if bad.is_empty() {
                String::new()
            } else {
                format!(", off: {}", bad.join(" "))
            }
        ),
    )
}

fn criterion_3() -> Outcome {
    let z = mu_z(OPT_TOL).unwrap();
    let e8 = mu_lattice(&e8_series(DEFAULT_TRUNCATION).unwrap(), OPT_TOL).unwrap();
    let leech = mu_lattice(&leech_series(DEFAULT_TRUNCATION).unwrap(), OPT_TOL).unwrap();
    let worse = [z.mu, e8.mu, leech.mu]
        .iter()
        .all(|&mu| double_cap_compare(mu).unwrap() == DoubleCapVerdict::NoImprovement);
    let ok = (z.mu - 0.883_337).abs() <= 1e-6
        && (e8.mu - 0.884_06).abs() <= 1e-5
        && (leech.mu - 0.884_07).abs() <= 1e-5
        && worse;
    check(
        ok,
        format!(
            "mu_Z={:.7} (±1e-6), mu_E8={:.6} (±1e-5), mu_Leech={:.6} (±1e-5), all > sqrt(3)/2: {worse}",
            z.mu, e8.mu, leech.mu
        ),
    )
}

fn criterion_4() -> Outcome {
    let worst = (0..50)
        .map(|i| 10f64.powf(-1.0 + 2.0 * i as f64 / 49.0))
        .map(|x| functional_equation_residual(x).unwrap())
        .fold(0.0, f64::max);
    check(
        worst < 1e-10,
        format!("max residual over 50 x in [0.1, 10] = {worst:.2e} (< 1e-10)"),
    )
}

fn criterion_5() -> Outcome {
    let g = gamma_chi(1e-15).unwrap().value;
    let mut failures = Vec::new();
    let mut min_margin = f64::INFINITY;
    for i in 1..=19 {
        let gamma = 0.05 * i as f64;
        let (_, _, value) = best_l(gamma, OPT_TOL).unwrap();
        let (_, one_minus) = one_minus_t_theta_max(gamma, OPT_TOL).unwrap();
        let asymptotic = g / gamma.sqrt();
        min_margin = min_margin.min(value - asymptotic).min(value - one_minus);
        if value < asymptotic || value < one_minus {
            failures.push(format!("gamma={gamma:.2}"));
        }
    }
    check(
        failures.is_empty(),
        format!(
            "19 gammas, smallest margin {min_margin:.3e}{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!(", violated at {}", failures.join(" "))
            }
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut l_stars = Vec::new();
    let mut upper_ok = true;
    let mut strict_failures = Vec::new();
    for m in 1..=10u32 {
        let r = chromatic_lower_bound(BoundQuery::new(m, 1).unwrap(), OPT_TOL).unwrap();
        l_stars.push(r.l_star);
        let l = r.l_star as u32;
        upper_ok &= l <= 2 * m + 1;
        if m >= 4 && l >= 2 * m {
            strict_failures.push(format!("m={m}:l*={l}"));
        }
    }
    check(
        upper_ok && strict_failures.is_empty(),
        format!(
            "l* for m=1..10: {l_stars:?}; l* <= 2m+1: {upper_ok}; l* < 2m for m>=4: {}",
            if strict_failures.is_empty() {
                "true".to_string()
            } else {
                format!("false ({})", strict_failures.join(" "))
            }
        ),
    )
}

fn admissible_profile(rng: &mut StdRng) -> CompositionProfile {
    loop {
        let len = rng.gen_range(1..=5);
        let mut b: Vec<u64> = (0..len).map(|_| rng.gen_range(0..4)).collect();
        b.sort_unstable_by(|x, y| y.cmp(x));
        let order = CompositionProfile::new((0..len as u64).collect())
            .unwrap()
            .reordered();
        let mut a = vec![0; len];
        for (slot, &src) in order.iter().enumerate() {
            a[src as usize] = b[slot];
        }
        let profile = CompositionProfile::new(a).unwrap();
        if profile.multinomial().is_some_and(|c| c <= 100_000) {
            return profile;
        }
    }
}

fn criterion_7() -> Outcome {
    let mut box_cases = 0;
    let mut box_ok = true;
    for n in 1..=6u32 {
        for l in 0..=3u32 {
            let side = l as u64 + 1;
            let mut hist = vec![0u64; (n * l) as usize + 1];
            for code in 0..side.pow(n) {
                let s: u64 = (0..n).map(|i| code / side.pow(i) % side).sum();
                hist[s as usize] += 1;
            }
            let mut acc = 0u64;
            for d in 0..=(n * l) as u64 {
                acc += hist[d as usize];
                box_ok &= count_box(n, l, d) == acc.into();
                box_cases += 1;
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(SEED);
    let dmax_ok = (0..200).all(|_| {
        let p = admissible_profile(&mut rng);
        dmax_formula(&p).unwrap() == dmax_bruteforce(&p).unwrap()
    });

    let alt_ok = (0..=200).all(|j| {
        let (lhs, rhs) = alternating_square_identity(j);
        lhs == rhs
    });

    let multi_ok = (0..100).all(|_| {
        let n = rng.gen_range(1..=8);
        let parts = rng.gen_range(1..=4);
        let c: Vec<f64> = (0..parts).map(|_| rng.gen_range(0.0..3.0)).collect();
        let t = rng.gen_range(0.05..0.95);
        multinomial_lemma_check(n, &c, t).unwrap().holds()
    });

    check(
        box_ok && dmax_ok && alt_ok && multi_ok,
        format!(
            "count_box {box_cases} cases: {box_ok}; d_max 200 profiles: {dmax_ok}; alternating j<=200: {alt_ok}; multinomial 100 instances: {multi_ok}"
        ),
    )
}

fn tuples(alphabet: u8, k: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..(alphabet as u32).pow(k as u32)).map(move |code| {
        (0..k)
            .map(|i| (code / (alphabet as u32).pow(i as u32) % alphabet as u32) as u8)
            .collect()
    })
}

fn criterion_8() -> Outcome {
    let mut h_ok = true;
    let mut recon_ok = true;
    let mut trivial_absent = true;
    for k in 2..=5usize {
        let coeffs = partition_coefficients(k).unwrap();
        trivial_absent &= coeffs.keys().all(|p| p.is_nontrivial());
        let diag_mag: i64 = (1..k as i64).product();
        for xs in tuples(4, k) {
            let v = h_k_eval(&xs).unwrap();
            let distinct = (0..k).all(|i| (i + 1..k).all(|j| xs[i] != xs[j]));
            let constant = xs.iter().all(|x| *x == xs[0]);
            h_ok &= match (distinct, constant) {
                (true, _) => v == 1,
                (_, true) => v.abs() == diag_mag,
                _ => v == 0,
            };
            recon_ok &= reconstruct(&coeffs, &xs) == v;
        }
    }

    // J_k corpus: points of the even-sum box {0..3}^3 with p = 7, m = 2, so the
    // forbidden half squared distances are 7 and 14.
    let grid = even_box_points(3, 3);
    let (p, m) = (7u64, 2u64);
    let mut rng = StdRng::seed_from_u64(SEED ^ 8);
    let mut seen = [0usize; 3];
    let mut j_ok = true;
    let mut configs = 0;
    for k in 1..=5usize {
        let mut corpus: Vec<Vec<usize>> = Vec::new();
        if k <= 2 {
            let total = grid.len().pow(k as u32 + 1);
            corpus.extend((0..total).map(|code| {
                (0..=k)
                    .map(|i| code / grid.len().pow(i as u32) % grid.len())
                    .collect()
            }));
        } else {
            corpus
                .extend((0..2000).map(|_| (0..=k).map(|_| rng.gen_range(0..grid.len())).collect()));
            corpus.extend((0..grid.len()).map(|i| vec![i; k + 1]));
        }
        for idx in corpus {
            let points = idx.iter().map(|&i| grid[i].clone()).collect();
            let cfg = PointConfig::new(points, p, m).unwrap();
            let case = SimplexCase::classify(&cfg);
            seen[case as usize] += 1;
            j_ok &= case.accepts(j_k_eval(&cfg, k).unwrap(), k, p);
            configs += 1;
        }
    }

    let mut clique_ok = true;
    let mut rng = StdRng::seed_from_u64(SEED ^ 12);
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let l = rng.gen_range(0..=2u32);
        let all = even_box_points(n, l);
        let points: Vec<Vec<i64>> = all.into_iter().filter(|_| rng.gen_bool(0.7)).collect();
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        clique_ok &= clique_bound_check_on(points, l, m, k, 10_000_000)
            .unwrap()
            .holds();
    }

    check(
        h_ok && recon_ok && trivial_absent && j_ok && clique_ok && seen.iter().all(|&c| c > 0),
        format!(
            "h_k k<=5 over 4 letters: {h_ok}; reconstruction: {recon_ok}; trivial partition absent: {trivial_absent}; \
             j_k on {configs} configs (simplex/diagonal/other = {}/{}/{}): {j_ok}; clique bound 50 instances: {clique_ok}",
            seen[0], seen[1], seen[2]
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 gamma_chi constants",
            criterion_1,
            Some(Duration::from_millis(100)),
        ),
        ("2 bound table", criterion_2, Some(Duration::from_secs(5))),
        (
            "3 lattice mu values",
            criterion_3,
            Some(Duration::from_secs(10)),
        ),
        ("4 functional equation", criterion_4, None),
        ("5 asymptotic inequalities", criterion_5, None),
        ("6 l* versus 2m", criterion_6, None),
        (
            "7 combinatorics oracles",
            criterion_7,
            Some(Duration::from_secs(30)),
        ),
        (
            "8 tensor oracles",
            criterion_8,
            Some(Duration::from_secs(60)),
        ),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = budget.map_or(true, |b| elapsed <= b);
        let ok = outcome.ok && in_time;
        if !ok {
            failed += 1;
        }
        let timing = match budget {
            Some(b) => format!(
                "{:.3}s / {:.1}s budget",
                elapsed.as_secs_f64(),
                b.as_secs_f64()
            ),
            None => format!("{:.3}s", elapsed.as_secs_f64()),
        };
        println!(
            "{} criterion {name}: {} [{timing}]",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    println!(
        "INFO criterion 9 scope: chromatic numbers, finite-n colorings, and partition ranks of J_k are bounded, not computed; criteria 7 and 8 carry the checks"
    );
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
