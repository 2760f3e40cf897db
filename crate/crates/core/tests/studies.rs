use l1delay_core::kernel::{gamma, FractionalOrder, TimeGrid};
use l1delay_core::studies::{
    delay_node_study, error_trace, temporal_study, truncation_error_profile, ConvergenceTable,
    ManufacturedCase,
};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn case(alpha: f64) -> ManufacturedCase {
    ManufacturedCase::with_default_coefficients(FractionalOrder::new(alpha).unwrap()).unwrap()
}

/// Tanh-sinh quadrature of `F` over `(a, b)`; `F` receives the distances to
/// both endpoints so endpoint singularities are evaluated without cancellation.
fn tanh_sinh(a: f64, b: f64, f: impl Fn(f64, f64) -> f64) -> f64 {
    let step = 1.0 / 128.0;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut sum = 0.0;
    // wide range: (t-s)^{-α} with α near 1 leaves mass very close to the endpoint
    let kmax = (6.0 / step) as i64;
    for k in -kmax..=kmax {
        let u = k as f64 * step;
        let v = half_pi * u.sinh();
        let from_a = (b - a) / (1.0 + (-2.0 * v).exp());
        let from_b = (b - a) / (1.0 + (2.0 * v).exp());
        if from_a <= 0.0 || from_b <= 0.0 {
            continue;
        }
        let w = (b - a) / 2.0 * half_pi * u.cosh() / v.cosh().powi(2);
        sum += w * f(from_a, from_b);
    }
    sum * step
}

/// Caputo derivative of the b = -1, τ = 1 time factor by quadrature of
/// `∫_0^t ω_{1-α}(t-s) g'(s) ds`, with `g'(s) = Σ_l (-1)^l ω_{lα}(s - (l-1))`.
fn caputo_by_quadrature(alpha: f64, t: f64) -> f64 {
    let kernel_scale = 1.0 / gamma(1.0 - alpha).unwrap();
    let mut total = 0.0;
    let mut left = 0.0;
    while left < t {
        let right = (left + 1.0).min(t);
        let piece = tanh_sinh(left, right, |from_left, from_right| {
            let s = left + from_left;
            let t_minus_s = (t - right) + from_right;
            let mut dg = 0.0;
            for l in 1..=3 {
                let shift = (l - 1) as f64;
                let order = l as f64 * alpha;
                let arg = if shift == left { from_left } else { s - shift };
                if arg > 0.0 {
                    let sign = if l % 2 == 1 { -1.0 } else { 1.0 };
                    dg += sign * arg.powf(order - 1.0) / gamma(order).unwrap();
                }
            }
            kernel_scale * t_minus_s.powf(-alpha) * dg
        });
        total += piece;
        left = right;
    }
    total
}

#[test]
fn caputo_of_time_factor_matches_quadrature() {
    for alpha in [0.4, 0.5, 0.6, 0.8] {
        let c = case(alpha);
        for t in [0.2, 0.9, 1.0, 1.3, 1.95, 2.4, 3.0] {
            let closed = c.exact_caputo_time_factor(t);
            let quad = caputo_by_quadrature(alpha, t);
            assert!((closed - quad).abs() < 1e-8, "alpha {alpha}, t {t}: {closed} vs {quad}");
        }
    }
}

#[test]
fn manufactured_pde_residual_vanishes() {
    let mut rng = StdRng::seed_from_u64(3);
    for alpha in [0.4, 0.5, 0.6, 0.8] {
        let c = case(alpha);
        for _ in 0..100 {
            let x = rng.gen_range(0.0..1.0);
            let t = rng.gen_range(1e-6..3.0);
            let r = c.pde_residual(x, t);
            assert!(r.abs() <= 1e-10, "alpha {alpha} at ({x}, {t}): {r}");
        }
    }
}

#[test]
fn truncation_constants_stable_under_refinement() {
    let c = case(0.4);
    let coarse = truncation_error_profile(&c, TimeGrid::new(1.0, 100, 3).unwrap()).unwrap();
    let fine = truncation_error_profile(&c, TimeGrid::new(1.0, 200, 3).unwrap()).unwrap();
    let ratio = fine.fitted_constant / coarse.fitted_constant;
    assert!((1.0 / 1.5..=1.5).contains(&ratio), "ratio {ratio}");
    for (a, b) in coarse.interval_constants.iter().zip(&fine.interval_constants) {
        let r = b / a;
        assert!((1.0 / 1.5..=1.5).contains(&r), "interval ratio {r}");
    }
}

#[test]
fn truncation_decay_on_first_interval() {
    let c = case(0.6);
    let profile = truncation_error_profile(&c, TimeGrid::new(1.0, 100, 3).unwrap()).unwrap();
    let slope = profile.decay_slope(10, 100);
    assert!((slope - (0.6 - 2.0)).abs() <= 0.15, "slope {slope}");
}

#[test]
fn coarse_tables_are_consistent() {
    let c = case(0.5);
    let h = 1.0 / 64.0;
    let steps = [10, 20, 40];
    let temporal = temporal_study(&c, h, &steps).unwrap();
    let nodes = delay_node_study(&c, h, &steps).unwrap();
    assert_eq!(temporal.rows.len(), 3);
    for i in 1..=3 {
        let col = temporal.column(i).unwrap();
        assert!(col.windows(2).all(|w| w[1] <= w[0]), "interval {i}: {col:?}");
        for (node, max) in nodes.column(i).unwrap().iter().zip(&col) {
            assert!(node <= max);
        }
    }
    // the same traces rebuild identical tables
    let traces: Vec<_> = steps.iter().map(|&n| error_trace(&c, n, 64).unwrap()).collect();
    assert_eq!(ConvergenceTable::temporal(0.5, h, &traces), temporal);
    assert_eq!(ConvergenceTable::delay_nodes(0.5, h, &traces), nodes);
}

#[test]
fn study_rejects_non_doubling_resolutions() {
    let c = case(0.5);
    assert!(temporal_study(&c, 0.1, &[10, 30]).is_err());
    assert!(temporal_study(&c, 0.1, &[]).is_err());
}
