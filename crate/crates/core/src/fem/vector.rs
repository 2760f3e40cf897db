use alloc::vec::Vec;
use core::ops::{Deref, DerefMut};

/// Interior nodal coefficients of a function in the hat-function basis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FemVector(pub Vec<f64>);

impl FemVector {
    pub fn zeros(len: usize) -> Self {
        Self(alloc::vec![0.0; len])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl From<Vec<f64>> for FemVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl Deref for FemVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for FemVector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}
