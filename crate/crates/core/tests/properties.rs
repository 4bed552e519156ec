mod common;

use common::*;
use proptest::prelude::*;
use tridecomp::flow::verify_decomposition;
use tridecomp::generators::random_dense;
use tridecomp::grid::{sweep, GridBox, GridParams, ParamPoint};
use tridecomp::{decompose, Delta};

fn delta() -> Delta {
    "0.148".parse().unwrap()
}

fn small_graph() -> impl Strategy<Value = (usize, u32)> {
    (1usize..=8).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        let max = if pairs == 32 { u32::MAX } else { (1u32 << pairs).wrapping_sub(1) };
        (Just(n), 0..=max)
    })
}

fn point_in_box() -> impl Strategy<Value = ParamPoint> {
    let b = GridBox::default();
    (b.alpha.0..=b.alpha.1, b.tau.0..=b.tau.1, b.mu.0..=b.mu.1).prop_map(|(a, t, m)| ParamPoint::new(a, t, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn small_graphs_match_brute_force((n, code) in small_graph(), cut_bits in any::<u32>()) {
        let g = graph_from_code(n, code);
        let mask: Vec<bool> = (0..g.m()).map(|e| cut_bits >> e & 1 == 1).collect();
        prop_assert_eq!(check_oracles(&g, &mask, &delta()), Ok(()));
    }

    #[test]
    fn dense_small_graphs_match_brute_force(n in 5usize..=8, missing in proptest::collection::vec(0usize..28, 0..4), cut_bits in any::<u32>()) {
        let full = (1u32 << (n * (n - 1) / 2)) - 1;
        let code = missing.iter().fold(full, |c, &b| c & !(1 << (b % (n * (n - 1) / 2))));
        let g = graph_from_code(n, code);
        let mask: Vec<bool> = (0..g.m()).map(|e| cut_bits >> e & 1 == 1).collect();
        prop_assert_eq!(check_oracles(&g, &mask, &delta()), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn switches_commute_and_conserve(
        n in 4usize..=7,
        missing in proptest::collection::vec(0usize..21, 0..3),
        moves in proptest::collection::vec((0usize..1000, -7i64..=7, 1i64..=6), 1..12),
        seed in any::<u64>(),
    ) {
        let pairs = n * (n - 1) / 2;
        let code = missing.iter().fold((1u32 << pairs) - 1, |c, &b| c & !(1 << (b % pairs)));
        let g = graph_from_code(n, code);
        let mut order: Vec<usize> = (0..moves.len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(check_switches(&g, &moves, &order), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn gradients_match_finite_differences(p in point_in_box()) {
        prop_assert_eq!(check_gradient(&p, 1e-6, 1e-6), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn g_is_continuous_across_cases(p in point_in_box(), axis in 0usize..3) {
        let b = GridBox::default().axes();
        let mut start = p.coords();
        start[axis] = b[axis].0;
        let brackets = case_brackets(&p.with_coords(start), axis, b[axis].1, 64);
        for (lo, hi) in brackets {
            prop_assert_eq!(check_continuity(&lo, &hi, axis, 1e-14, 1e-12), Ok(()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_dense_graphs_decompose(n in 8usize..=30, seed in any::<u64>()) {
        let d = delta();
        let g = random_dense(n, &d, seed).unwrap();
        prop_assert!(d.admits_min_degree(n, g.min_degree()));
        let result = decompose(&g, &d).unwrap();
        let w = result.weighting().expect("dense graph decomposes");
        prop_assert!(verify_decomposition(&g, w).valid);
    }

    #[test]
    fn refinement_never_raises_the_minimum(a in 0usize..20, t in 0usize..4, m in 0usize..1) {
        let lo = |x: f64, k: usize| ((x * 100.0).round() + k as f64) / 100.0;
        let bounds = GridBox {
            alpha: (lo(0.45, a), lo(0.45, a + 4)),
            tau: (lo(0.77, t), lo(0.77, t + 2)),
            mu: (lo(0.852, m), 0.863),
        };
        let run = |h: f64| {
            let mut params = GridParams::new(h, 0.0);
            params.bounds = bounds;
            params.table = false;
            params.spot_check = false;
            sweep(&params).unwrap()
        };
        let coarse = run(0.01);
        let fine = run(0.001);
        prop_assert!(fine.points_checked > coarse.points_checked);
        prop_assert!(fine.min_diff <= coarse.min_diff);
    }
}

#[test]
fn refinement_over_the_full_box() {
    let run = |h: f64| {
        let mut params = GridParams::new(h, 0.00022);
        params.table = false;
        params.spot_check = false;
        sweep(&params).unwrap()
    };
    let coarse = run(0.01);
    let fine = run(0.001);
    assert!(fine.min_diff <= coarse.min_diff);
    assert!(coarse.holds && fine.holds);
}
