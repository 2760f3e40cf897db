/// `K_{β,n}`: `1 + (1 - n^{1-β})/(β - 1)` for β ≠ 1 and `1 + ln n` at β = 1.
///
/// Bounds `Σ_{j=1}^{n} j^{-β}` from above by integral comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaBound {
    pub beta: f64,
    pub n: u64,
    pub value: f64,
}

/// `β_1 = 1 + α`, the exponent used when α <= 1/2.
pub fn beta_small_order(alpha: f64) -> f64 {
    1.0 + alpha
}

/// `β_2 = 1`.
pub const BETA_LOG: f64 = 1.0;

/// `β_3 = 2 - α`, the exponent used when α > 1/2.
pub fn beta_large_order(alpha: f64) -> f64 {
    2.0 - alpha
}

/// Evaluate `K_{β,n}`. Panics unless `β >= 0` and `n >= 1`.
pub fn kappa(beta: f64, n: u64) -> KappaBound {
    assert!(beta >= 0.0, "kappa: beta must be non-negative");
    assert!(n >= 1, "kappa: n must be at least 1");
    let ln_n = libm::log(n as f64);
    let value = if beta == 1.0 {
        1.0 + ln_n
    } else {
        // (1 - n^{1-β})/(β-1) = -expm1((1-β) ln n)/(β-1), stable as β -> 1
        let d = beta - 1.0;
        1.0 - libm::expm1(-d * ln_n) / d
    };
    KappaBound { beta, n, value }
}
