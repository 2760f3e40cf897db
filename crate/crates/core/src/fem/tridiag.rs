use alloc::vec;
use alloc::vec::Vec;

use super::FemVector;
use crate::{Error, Result};

/// Pivots smaller than this in magnitude are reported as singular.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// Tridiagonal matrix; `sub[i] = T[i+1][i]` and `sup[i] = T[i][i+1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let off = diag.len().saturating_sub(1);
        if sub.len() != off {
            return Err(Error::LengthMismatch {
                expected: off,
                actual: sub.len(),
            });
        }
        if sup.len() != off {
            return Err(Error::LengthMismatch {
                expected: off,
                actual: sup.len(),
            });
        }
        Ok(Self { sub, diag, sup })
    }

    pub fn zeros(n: usize) -> Self {
        let off = n.saturating_sub(1);
        Self {
            sub: vec![0.0; off],
            diag: vec![0.0; n],
            sup: vec![0.0; off],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Bitwise symmetry: `sub == sup`.
    pub fn is_symmetric(&self) -> bool {
        self.sub
            .iter()
            .zip(&self.sup)
            .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    /// `scale * self + other`, entrywise.
    pub fn scaled_add(&self, scale: f64, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        let combine = |a: &[f64], b: &[f64]| -> Vec<f64> {
            a.iter().zip(b).map(|(x, y)| scale * x + y).collect()
        };
        Self {
            sub: combine(&self.sub, &other.sub),
            diag: combine(&self.diag, &other.diag),
            sup: combine(&self.sup, &other.sup),
        }
    }

    /// `out = T x`.
    pub fn mul_into(&self, x: &[f64], out: &mut [f64]) {
        let n = self.len();
        assert_eq!(x.len(), n);
        assert_eq!(out.len(), n);
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.sub[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += self.sup[i] * x[i + 1];
            }
            out[i] = v;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> FemVector {
        let mut out = FemVector::zeros(self.len());
        self.mul_into(x, &mut out);
        out
    }

    /// `xᵀ T x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let tx = self.mul_vec(x);
        tx.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// LU factors for repeated solves (Thomas elimination, no pivoting).
    pub fn factor(&self) -> Result<ThomasFactorization> {
        let n = self.len();
        let mut pivots = Vec::with_capacity(n);
        let mut multipliers = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n {
            let u = if i == 0 {
                self.diag[0]
            } else {
                let l = self.sub[i - 1] / pivots[i - 1];
                multipliers.push(l);
                self.diag[i] - l * self.sup[i - 1]
            };
            if !(u.abs() >= PIVOT_FLOOR) {
                return Err(Error::Singular { row: i, pivot: u });
            }
            pivots.push(u);
        }
        Ok(ThomasFactorization {
            pivots,
            multipliers,
            sup: self.sup.clone(),
        })
    }
}

/// Stored Thomas elimination of a tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ThomasFactorization {
    pivots: Vec<f64>,
    multipliers: Vec<f64>,
    sup: Vec<f64>,
}

impl ThomasFactorization {
    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Overwrite `rhs` with the solution.
    pub fn solve_in_place(&self, rhs: &mut [f64]) -> Result<()> {
        let n = self.len();
        if rhs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: rhs.len(),
            });
        }
        for i in 1..n {
            rhs[i] -= self.multipliers[i - 1] * rhs[i - 1];
        }
        if n > 0 {
            rhs[n - 1] /= self.pivots[n - 1];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            rhs[i] = (rhs[i] - self.sup[i] * rhs[i + 1]) / self.pivots[i];
        }
        Ok(())
    }
}

/// Solve `T x = rhs` by Thomas elimination.
pub fn solve_tridiagonal(matrix: &TridiagonalMatrix, rhs: &FemVector) -> Result<FemVector> {
    let factor = matrix.factor()?;
    let mut x = rhs.clone();
    factor.solve_in_place(&mut x)?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve() {
        let t = TridiagonalMatrix::new(vec![0.0; 3], vec![1.0; 4], vec![0.0; 3]).unwrap();
        let rhs = FemVector(vec![1.0, -2.0, 3.5, 0.25]);
        assert_eq!(solve_tridiagonal(&t, &rhs).unwrap(), rhs);
    }

    #[test]
    fn round_trip_small() {
        let t = TridiagonalMatrix::new(
            vec![-1.0, 0.5, 0.2],
            vec![4.0, 3.0, 5.0, 2.0],
            vec![-1.0, 0.5, 0.2],
        )
        .unwrap();
        let x = [1.0, 2.0, -1.0, 0.5];
        let rhs = t.mul_vec(&x);
        let got = solve_tridiagonal(&t, &rhs).unwrap();
        for (g, w) in got.iter().zip(x) {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_pivot() {
        let t = TridiagonalMatrix::new(vec![1.0], vec![1.0, 1.0], vec![1.0]).unwrap();
        assert!(matches!(t.factor(), Err(Error::Singular { row: 1, .. })));
        let z = TridiagonalMatrix::zeros(3);
        assert!(matches!(z.factor(), Err(Error::Singular { row: 0, .. })));
    }

    #[test]
    fn shape_checks() {
        assert!(TridiagonalMatrix::new(vec![0.0; 2], vec![1.0; 4], vec![0.0; 3]).is_err());
        let t = TridiagonalMatrix::new(vec![], vec![2.0], vec![]).unwrap();
        let f = t.factor().unwrap();
        let mut rhs = [1.0, 2.0];
        assert!(f.solve_in_place(&mut rhs).is_err());
    }
}
