use alloc::vec::Vec;

use super::gamma::gamma;
use super::weights::{FractionalOrder, L1Weights};
use crate::{Error, Result};

/// Complementary discrete kernel of the L1 weights.
///
/// `P_0 = 1/a_0` and `P_m = (1/a_0) Σ_{i=0}^{m-1} P_i (a_{m-i-1} - a_{m-i})`,
/// which makes `Σ_{i=0}^{m} P_i a_{m-i} = 1` for every `m`. The recursion only
/// depends on the offset `m`, so one sequence serves every `(n, k)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementaryKernel {
    alpha: FractionalOrder,
    rho: f64,
    p: Vec<f64>,
}

/// Outcome of checking the kernel against its exact identity and bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCheck {
    /// Largest `|Σ_{j=k}^{n} P_{n-j} a_{j-k} - 1|` over `1 <= k <= n <= len`.
    pub max_identity_residual: f64,
    /// Count of `l` with `P_l >= Γ(2-α) ρ^α (l+1)^{α-1}` (the `l = 0` case is an equality).
    pub decay_violations: usize,
    /// Count of `n` with `Σ_{j=1}^{n} P_{n-j} > t_n^α / Γ(1+α)`.
    pub sum_violations: usize,
}

impl ComplementaryKernel {
    pub fn new(weights: &L1Weights, length: usize) -> Result<Self> {
        if weights.len() < length {
            return Err(Error::LengthMismatch {
                expected: length,
                actual: weights.len(),
            });
        }
        let a = weights.as_slice();
        let inv_a0 = 1.0 / a[0];
        let mut p = Vec::with_capacity(length);
        for m in 0..length {
            let value = if m == 0 {
                inv_a0
            } else {
                let s: f64 = p
                    .iter()
                    .enumerate()
                    .map(|(i, &pi)| pi * (a[m - i - 1] - a[m - i]))
                    .sum();
                inv_a0 * s
            };
            p.push(value);
        }
        Ok(Self {
            alpha: weights.alpha(),
            rho: weights.rho(),
            p,
        })
    }

    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    #[inline]
    pub fn get(&self, l: usize) -> f64 {
        self.p[l]
    }

    /// `Σ_{i=0}^{m} P_i a_{m-i} - 1`, equal to the `(n, k)` identity residual for `m = n - k`.
    pub fn identity_residual(&self, weights: &L1Weights, m: usize) -> f64 {
        let a = weights.as_slice();
        let s: f64 = (0..=m).map(|i| self.p[i] * a[m - i]).sum();
        s - 1.0
    }

    /// Upper bound `Γ(2-α) ρ^α (l+1)^{α-1}` on `P_l`.
    pub fn decay_bound(&self, l: usize) -> f64 {
        let alpha = self.alpha.get();
        gamma(2.0 - alpha).expect("2 - alpha > 1")
            * libm::pow(self.rho, alpha)
            * libm::pow(l as f64 + 1.0, alpha - 1.0)
    }

    /// Upper bound `t_n^α / Γ(1+α)` on `Σ_{j=1}^{n} P_{n-j}`.
    pub fn sum_bound(&self, n: usize) -> f64 {
        let alpha = self.alpha.get();
        libm::pow(n as f64 * self.rho, alpha) / gamma(1.0 + alpha).expect("1 + alpha > 1")
    }

    /// Check the identity and both bounds for every `n <= len`.
    pub fn check(&self, weights: &L1Weights) -> KernelCheck {
        let alpha = self.alpha.get();
        let g2 = gamma(2.0 - alpha).expect("2 - alpha > 1") * libm::pow(self.rho, alpha);
        let g1 = gamma(1.0 + alpha).expect("1 + alpha > 1");

        let mut max_identity_residual: f64 = 0.0;
        let mut decay_violations = 0;
        let mut sum_violations = 0;
        let mut partial = 0.0;
        for (l, &pl) in self.p.iter().enumerate() {
            let r = self.identity_residual(weights, l).abs();
            max_identity_residual = max_identity_residual.max(r);

            let bound = g2 * libm::pow(l as f64 + 1.0, alpha - 1.0);
            let violated = if l == 0 {
                // P_0 = 1/a_0 equals the bound; allow for the rounding of both sides.
                pl > bound * (1.0 + 4.0 * f64::EPSILON)
            } else {
                pl >= bound
            };
            if violated {
                decay_violations += 1;
            }

            partial += pl;
            let n = l + 1;
            if partial > libm::pow(n as f64 * self.rho, alpha) / g1 {
                sum_violations += 1;
            }
        }
        KernelCheck {
            max_identity_residual,
            decay_violations,
            sum_violations,
        }
    }
}
