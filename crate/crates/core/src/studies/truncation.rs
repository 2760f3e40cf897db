use alloc::vec::Vec;

use super::ManufacturedCase;
use crate::kernel::{l1_apply, FractionalOrder, L1Weights, TimeGrid};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationEntry {
    pub n: usize,
    /// Delay interval `i` with `(i-1)N < n <= iN`.
    pub interval: usize,
    pub time: f64,
    /// `R^n = D^α g(t_n) - D^α_N g^n`.
    pub residual: f64,
    /// Constant-free shape `Σ_{l=1}^{i} ρ^{(l-1)α} (n-(l-1)N)^{e_l}`.
    pub bound: f64,
    pub ratio: f64,
}

/// Local truncation error of the L1 operator along a time factor, with the
/// expected decay shape on each delay interval.
///
/// The shape exponent is `e_l = (l-2)α - 1` for `α <= 1/2` and `lα - 2` above.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationProfile {
    pub alpha: f64,
    pub grid: TimeGrid,
    pub entries: Vec<TruncationEntry>,
    /// `max |R^n| / bound` over all steps.
    pub fitted_constant: f64,
    /// Same maximum restricted to each delay interval, `i = 1..=K`.
    pub interval_constants: Vec<f64>,
}

impl TruncationProfile {
    /// Least-squares slope of `ln |R^n|` against `ln n` for `lo <= n <= hi`.
    pub fn decay_slope(&self, lo: usize, hi: usize) -> f64 {
        loglog_slope(
            self.entries
                .iter()
                .filter(|e| e.n >= lo && e.n <= hi)
                .map(|e| (e.n as f64, e.residual.abs())),
        )
    }
}

/// Shape value at step `n` in interval `i`.
fn bound_shape(alpha: f64, rho: f64, steps_per_delay: usize, n: usize, interval: usize) -> f64 {
    (1..=interval)
        .map(|l| {
            let offset = (n - (l - 1) * steps_per_delay) as f64;
            let exponent = if alpha <= 0.5 {
                (l as f64 - 2.0) * alpha - 1.0
            } else {
                l as f64 * alpha - 2.0
            };
            libm::pow(rho, (l - 1) as f64 * alpha) * libm::pow(offset, exponent)
        })
        .sum()
}

/// Profile the L1 truncation error of an arbitrary time function `g` whose
/// Caputo derivative is known in closed form.
pub fn truncation_profile_with(
    alpha: FractionalOrder,
    grid: TimeGrid,
    g: impl Fn(f64) -> f64,
    caputo: impl Fn(f64) -> f64,
) -> Result<TruncationProfile> {
    let total = grid.final_step();
    let weights = L1Weights::new(alpha, grid.rho(), total)?;
    let samples: Vec<f64> = (0..=total).map(|n| g(grid.time(n as i64))).collect();
    let a = alpha.get();

    let mut entries = Vec::with_capacity(total);
    let mut interval_constants = alloc::vec![0.0f64; grid.intervals()];
    for n in 1..=total {
        let t = grid.time(n as i64);
        let residual = caputo(t) - l1_apply(&weights, &samples[..=n])?;
        let interval = grid.interval_of(n);
        let bound = bound_shape(a, grid.rho(), grid.steps_per_delay(), n, interval);
        let ratio = residual.abs() / bound;
        interval_constants[interval - 1] = interval_constants[interval - 1].max(ratio);
        entries.push(TruncationEntry {
            n,
            interval,
            time: t,
            residual,
            bound,
            ratio,
        });
    }
    let fitted_constant = interval_constants.iter().fold(0.0f64, |m, &v| m.max(v));
    Ok(TruncationProfile {
        alpha: a,
        grid,
        entries,
        fitted_constant,
        interval_constants,
    })
}

/// Truncation profile of the manufactured time factor. The spatial factor
/// `sin(πx)` multiplies both operators and drops out.
pub fn truncation_error_profile(case: &ManufacturedCase, grid: TimeGrid) -> Result<TruncationProfile> {
    let factor = case.time_factor();
    truncation_profile_with(case.alpha(), grid, |t| factor.value(t), |t| factor.caputo(t))
}

/// Least-squares slope of `ln y` against `ln x`. Points with `y == 0` are skipped.
pub fn loglog_slope(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let (mut n, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, y) in points {
        if y <= 0.0 {
            continue;
        }
        let (lx, ly) = (libm::log(x), libm::log(y));
        n += 1.0;
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
