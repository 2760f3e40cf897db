use alloc::vec::Vec;

use super::gamma::gamma;
use crate::{Error, Result};

/// Order α of the Caputo derivative, restricted to the open interval (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidOrder(alpha))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Uniform time mesh `t_n = nτ/N`, `n = -N, ..., KN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    tau: f64,
    steps_per_delay: usize,
    intervals: usize,
    rho: f64,
}

impl TimeGrid {
    pub fn new(tau: f64, steps_per_delay: usize, intervals: usize) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::InvalidGrid("delay must be positive and finite"));
        }
        if steps_per_delay == 0 {
            return Err(Error::InvalidGrid("need at least one step per delay interval"));
        }
        if intervals == 0 {
            return Err(Error::InvalidGrid("need at least one delay interval"));
        }
        Ok(Self {
            tau,
            steps_per_delay,
            intervals,
            rho: tau / steps_per_delay as f64,
        })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// N, the number of steps per delay interval.
    pub fn steps_per_delay(&self) -> usize {
        self.steps_per_delay
    }

    /// K, the number of delay intervals in the horizon.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    /// Step size ρ = τ/N.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Index of the last time level, KN.
    pub fn final_step(&self) -> usize {
        self.intervals * self.steps_per_delay
    }

    /// Number of stored time levels, (K+1)N + 1.
    pub fn level_count(&self) -> usize {
        (self.intervals + 1) * self.steps_per_delay + 1
    }

    /// `t_n`, computed as `nτ/N` so that delay multiples land exactly on `iτ`.
    pub fn time(&self, n: i64) -> f64 {
        (n as f64 * self.tau) / self.steps_per_delay as f64
    }

    /// Delay interval `i` containing step `n >= 1`, i.e. `(i-1)N < n <= iN`.
    pub fn interval_of(&self, n: usize) -> usize {
        n.div_ceil(self.steps_per_delay)
    }
}

/// L1 weights `a_k = ((k+1)^{1-α} - k^{1-α}) / (Γ(2-α) ρ^α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Weights {
    alpha: FractionalOrder,
    rho: f64,
    a: Vec<f64>,
}

impl L1Weights {
    pub fn new(alpha: FractionalOrder, rho: f64, count: usize) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Domain {
                function: "l1_weights (step)",
                value: rho,
            });
        }
        if count == 0 {
            return Err(Error::LengthMismatch {
                expected: 1,
                actual: 0,
            });
        }
        let s = 1.0 - alpha.get();
        let scale = 1.0 / (gamma(2.0 - alpha.get())? * libm::pow(rho, alpha.get()));
        let a = (0..count)
            .map(|k| {
                if k == 0 {
                    scale
                } else {
                    // (k+1)^s - k^s = k^s (exp(s ln(1 + 1/k)) - 1) without cancellation
                    let k = k as f64;
                    scale * libm::pow(k, s) * libm::expm1(s * libm::log1p(1.0 / k))
                }
            })
            .collect();
        Ok(Self { alpha, rho, a })
    }

    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        self.a[k]
    }
}

/// Discrete Caputo operator `D^α_N u^n = Σ_{k=0}^{n-1} a_k (u^{n-k} - u^{n-k-1})`,
/// evaluated at the last sample, `samples = [u^0, ..., u^n]`.
pub fn l1_apply(weights: &L1Weights, samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            actual: samples.len(),
        });
    }
    let n = samples.len() - 1;
    if weights.len() < n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: weights.len(),
        });
    }
    Ok((0..n)
        .map(|k| weights.a[k] * (samples[n - k] - samples[n - k - 1]))
        .sum())
}
