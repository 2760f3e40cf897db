use l1delay_core::kernel::{
    gamma, kappa, l1_apply, ComplementaryKernel, DelayMatrix, FractionalOrder, L1Weights,
    TimeGrid,
};
use proptest::prelude::*;

fn order(alpha: f64) -> FractionalOrder {
    FractionalOrder::new(alpha).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn l1_is_exact_on_linear_functions(
        alpha in 0.01f64..0.99,
        c in -10.0f64..10.0,
        d in -10.0f64..10.0,
        steps in 1usize..500,
        tau in 0.1f64..5.0,
    ) {
        let grid = TimeGrid::new(tau, steps, 1).unwrap();
        let w = L1Weights::new(order(alpha), grid.rho(), steps).unwrap();
        let samples: Vec<f64> = (0..=steps).map(|j| c + d * grid.time(j as i64)).collect();
        let t = grid.time(steps as i64);
        let want = d * t.powf(1.0 - alpha) / gamma(2.0 - alpha).unwrap();
        let got = l1_apply(&w, &samples).unwrap();
        prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1e-300));
    }

    #[test]
    fn complementary_identity_and_bounds(
        alpha in 0.02f64..0.98,
        rho in 1e-4f64..2.0,
        len in 1usize..600,
    ) {
        let w = L1Weights::new(order(alpha), rho, len).unwrap();
        let p = ComplementaryKernel::new(&w, len).unwrap();
        let check = p.check(&w);
        prop_assert!(check.max_identity_residual <= 1e-10);
        prop_assert_eq!(check.decay_violations, 0);
        prop_assert_eq!(check.sum_violations, 0);
    }

    #[test]
    fn kappa_dominates_power_sums(beta in 0.0f64..3.0, n in 1u64..3000) {
        let sum: f64 = (1..=n).map(|j| (j as f64).powf(-beta)).sum();
        prop_assert!(sum <= kappa(beta, n).value * (1.0 + 1e-12));
    }

    #[test]
    fn kappa_decreasing_in_beta(b1 in 0.0f64..3.0, gap in 1e-3f64..1.0, n in 2u64..100_000) {
        prop_assert!(kappa(b1 + gap, n).value < kappa(b1, n).value);
    }
}

#[test]
fn kappa_sum_bound_on_named_exponents() {
    for beta in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let mut sum = 0.0;
        for n in 1..=10_000u64 {
            sum += (n as f64).powf(-beta);
            assert!(sum <= kappa(beta, n).value * (1.0 + 1e-12), "beta = {beta}, n = {n}");
        }
    }
}

#[test]
fn kappa_continuous_at_one() {
    for n in [2u64, 7, 100, 10_000] {
        let at = kappa(1.0, n).value;
        assert!((kappa(1.0 + 1e-8, n).value - at).abs() < 1e-6);
        assert!((kappa(1.0 - 1e-8, n).value - at).abs() < 1e-6);
    }
}

#[test]
fn kernel_identity_long_range() {
    for alpha in [0.3, 0.5, 0.7] {
        let w = L1Weights::new(order(alpha), 1.0 / 2000.0, 2000).unwrap();
        let p = ComplementaryKernel::new(&w, 2000).unwrap();
        let check = p.check(&w);
        assert!(check.max_identity_residual <= 1e-10, "{check:?}");
        assert_eq!(check.decay_violations + check.sum_violations, 0);
    }
}

#[test]
fn delay_matrix_nilpotent_on_every_interval() {
    let w = L1Weights::new(order(0.5), 0.1, 200).unwrap();
    let p = ComplementaryKernel::new(&w, 200).unwrap();
    for big_n in 1..=12 {
        for i in 1..=5usize {
            for n in (i - 1) * big_n + 1..=i * big_n {
                let j = DelayMatrix::new(&p, n, big_n).unwrap();
                assert_eq!(j.nilpotency_index(), i);
                let dense = j.to_dense().unwrap();
                assert!(dense.pow(i as u32).is_zero(), "N = {big_n}, n = {n}");
                if i > 1 {
                    assert!(!dense.pow(i as u32 - 1).is_zero(), "N = {big_n}, n = {n}");
                }
            }
        }
    }
}
