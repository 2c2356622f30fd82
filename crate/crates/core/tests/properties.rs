use chromabound_core::bound_engine::{best_l, maximize_over_t, F_ratio};
use chromabound_core::lattice_combinatorics::{
    count_box, dmax_bruteforce, dmax_formula, gf_upper_bound, is_prime, multinomial_lemma_check,
    next_prime, prime_gap_report, CompositionProfile,
};
use chromabound_core::lattice_theta::{e8_series, LatticeLabel};
use chromabound_core::special_functions::{gamma_chi, one_minus_t_theta_max, theta_truncated};
use chromabound_core::tensor_oracle::{
    clique_bound_check_on, even_box_points, h_k_eval, j_k_eval, partition_coefficients,
    reconstruct, PointConfig, SimplexCase,
};
use num_bigint::BigUint;
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn factorial(k: i64) -> i64 {
    (1..=k).product()
}

/// Turns a nonincreasing `b` into the `a` whose reordering is `b`.
fn profile_from_b(b: &[u64]) -> CompositionProfile {
    let slots: Vec<u64> = (0..b.len() as u64).collect();
    let order = CompositionProfile::new(slots).unwrap().reordered();
    let mut a = vec![0; b.len()];
    for (slot, &src) in order.iter().enumerate() {
        a[src as usize] = b[slot];
    }
    CompositionProfile::new(a).unwrap()
}

fn admissible_b() -> impl Strategy<Value = Vec<u64>> {
    (1usize..=4)
        .prop_flat_map(|len| proptest::collection::vec(0u64..4, len))
        .prop_map(|mut b| {
            b.sort_unstable_by(|x, y| y.cmp(x));
            b
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratio_never_below_one_at_optimum(gamma in 0.02f64..1.0, l in 1usize..40, t in 0.0f64..=1.0) {
        let (_, best) = maximize_over_t(gamma, l, TOL).unwrap();
        prop_assert!(best >= 1.0);
        prop_assert!(F_ratio(t, gamma, l).unwrap() <= best + 1e-12);
    }

    #[test]
    fn truncated_theta_grows_with_l(t in 0.0f64..1.0, gamma in 0.05f64..3.0, l in 1usize..50) {
        prop_assert!(theta_truncated(t, gamma, l + 1).unwrap() >= theta_truncated(t, gamma, l).unwrap());
    }

    #[test]
    fn best_l_dominates_asymptotic_bounds(gamma in 0.03f64..1.0) {
        let (_, _, value) = best_l(gamma, TOL).unwrap();
        let g = gamma_chi(1e-15).unwrap().value;
        prop_assert!(value >= g / gamma.sqrt() - 1e-12);
        let (_, one_minus) = one_minus_t_theta_max(gamma, TOL).unwrap();
        prop_assert!(value >= one_minus - 1e-12);
    }

    #[test]
    fn count_box_complement(n in 1u32..9, l in 0u32..5, d in 0u64..40) {
        let total = n as u64 * l as u64;
        prop_assume!(d < total);
        let sum = count_box(n, l, d) + count_box(n, l, total - d - 1);
        prop_assert_eq!(sum, BigUint::from(l + 1).pow(n));
    }

    #[test]
    fn gf_bound_dominates(n in 1u32..=10, l in 0u32..=4, d in 0u64..45, t in 0.01f64..0.99) {
        let exact = count_box(n, l, d).to_string().parse::<f64>().unwrap();
        prop_assert!(exact <= gf_upper_bound(n, l, d, t).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn dmax_formula_matches_enumeration(b in admissible_b()) {
        let profile = profile_from_b(&b);
        prop_assume!(profile.multinomial().unwrap() <= 100_000);
        prop_assert_eq!(dmax_formula(&profile).unwrap(), dmax_bruteforce(&profile).unwrap());
    }

    #[test]
    fn multinomial_inequality(n in 1u32..=8, c in proptest::collection::vec(0.0f64..3.0, 1..=4), t in 0.05f64..0.95) {
        let r = multinomial_lemma_check(n, &c, t).unwrap();
        prop_assert!(r.holds(), "{:?}", r);
        // With distinct weights the ordered compositions contain the overall maximum.
        prop_assert!((r.unrestricted_max - r.lhs_max).abs() <= 1e-12 * r.lhs_max);
    }

    #[test]
    fn next_prime_is_next(x in 0u64..1_000_000_000_000) {
        let p = next_prime(x).unwrap();
        prop_assert!(p > x && is_prime(p));
        prop_assert!((x + 1..p).all(|y| !is_prime(y)));
    }

    #[test]
    fn prime_gap_is_positive(d in 1u64..100_000, m in 1u64..50) {
        let r = prime_gap_report(d, m).unwrap();
        prop_assert!(r.epsilon0 > 0.0);
        prop_assert!(r.p as u128 * (m as u128 + 1) > d as u128);
    }

    #[test]
    fn h_k_is_three_valued(xs in proptest::collection::vec(0u8..4, 2..=6)) {
        let k = xs.len() as i64;
        let v = h_k_eval(&xs).unwrap();
        let distinct = (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| xs[i] != xs[j]));
        let constant = xs.iter().all(|x| *x == xs[0]);
        let want = if distinct {
            1
        } else if constant {
            if k % 2 == 0 { factorial(k - 1) } else { -factorial(k - 1) }
        } else {
            0
        };
        prop_assert_eq!(v, want);
    }

    #[test]
    fn partition_expansion_reconstructs(xs in proptest::collection::vec(0u8..3, 2..=6)) {
        let coeffs = partition_coefficients(xs.len()).unwrap();
        prop_assert_eq!(reconstruct(&coeffs, &xs), h_k_eval(&xs).unwrap());
    }

    #[test]
    fn j_k_follows_case_table(
        k in 1usize..=4,
        raw in proptest::collection::vec((0i64..3, 0i64..3), 5),
        m in 1u64..3,
    ) {
        // Even coordinate sums keep all squared distances even.
        let points: Vec<Vec<i64>> = raw
            .iter()
            .take(k + 1)
            .map(|&(x, y)| vec![x, if (x + y) % 2 == 0 { y } else { y + 1 }])
            .collect();
        let p = 5;
        let cfg = PointConfig::new(points, p, m).unwrap();
        let v = j_k_eval(&cfg, k).unwrap();
        prop_assert!(SimplexCase::classify(&cfg).accepts(v, k, p), "{:?} -> {}", cfg, v);
    }

    #[test]
    fn clique_bound_on_random_subsets(mask in 0u32..(1 << 14), m in 1u64..=3, k in 1usize..=2) {
        let all = even_box_points(3, 2);
        let points: Vec<Vec<i64>> = all
            .into_iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x)
            .collect();
        let r = clique_bound_check_on(points, 2, m, k, 10_000_000).unwrap();
        prop_assert!(r.holds());
        prop_assert!(r.max_clique_free <= r.ground_set_size);
    }

    #[test]
    fn dn_labels_round_trip(n in 1u32..10_000) {
        let label = LatticeLabel::Dn(n);
        prop_assert_eq!(label.to_string().parse::<LatticeLabel>().unwrap(), label);
    }

    #[test]
    fn e8_tail_bound_grows_with_t(a in 0.05f64..0.9, b in 0.05f64..0.9) {
        let s = e8_series(64).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(s.tail_bound(lo).unwrap() <= s.tail_bound(hi).unwrap());
    }
}
