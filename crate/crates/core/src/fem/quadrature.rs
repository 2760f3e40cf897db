//! Gauss-Legendre rules mapped to the reference element `[0, 1]`.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureRule {
    pub points: &'static [f64],
    pub weights: &'static [f64],
}

// 1/2 ∓ √(3/5)/2
const G3_OFFSET: f64 = 0.387_298_334_620_741_7;

/// 3-point rule, exact through degree 5. Used for assembly and loads.
pub const GAUSS3: QuadratureRule = QuadratureRule {
    points: &[0.5 - G3_OFFSET, 0.5, 0.5 + G3_OFFSET],
    weights: &[5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0],
};

const G5_A: f64 = 0.453_089_922_969_332_0; // 0.9061798459386640 / 2
const G5_B: f64 = 0.269_234_655_052_841_5; // 0.5384693101056831 / 2
const G5_WA: f64 = 0.118_463_442_528_094_5; // 0.2369268850561891 / 2
const G5_WB: f64 = 0.239_314_335_249_683_2; // 0.4786286704993665 / 2

/// 5-point rule, exact through degree 9. Used for error norms.
pub const GAUSS5: QuadratureRule = QuadratureRule {
    points: &[0.5 - G5_A, 0.5 - G5_B, 0.5, 0.5 + G5_B, 0.5 + G5_A],
    weights: &[G5_WA, G5_WB, 64.0 / 225.0, G5_WB, G5_WA],
};

impl QuadratureRule {
    /// `∫_{x0}^{x1} g`.
    pub fn integrate(&self, x0: f64, x1: f64, mut g: impl FnMut(f64) -> f64) -> f64 {
        let h = x1 - x0;
        self.points
            .iter()
            .zip(self.weights)
            .map(|(&s, &w)| w * g(x0 + s * h))
            .sum::<f64>()
            * h
    }
}
