use alloc::vec;
use alloc::vec::Vec;

use super::complementary::ComplementaryKernel;
use crate::{Error, Result};

/// Largest order accepted by [`DelayMatrix::to_dense`].
pub const MAX_DENSE_ORDER: usize = 200;

/// The `n × n` upper-triangular Toeplitz matrix `J` with `J[r][c] = P_{c-r-N}`
/// for `c - r >= N` and zero elsewhere.
///
/// Only the first row's band `P_0 .. P_{n-N-1}` is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayMatrix {
    order: usize,
    steps_per_delay: usize,
    band: Vec<f64>,
}

impl DelayMatrix {
    pub fn new(kernel: &ComplementaryKernel, order: usize, steps_per_delay: usize) -> Result<Self> {
        if order == 0 || steps_per_delay == 0 {
            return Err(Error::InvalidGrid("delay matrix needs n >= 1 and N >= 1"));
        }
        let band_len = order.saturating_sub(steps_per_delay);
        if kernel.len() < band_len {
            return Err(Error::LengthMismatch {
                expected: band_len,
                actual: kernel.len(),
            });
        }
        Ok(Self {
            order,
            steps_per_delay,
            band: kernel.as_slice()[..band_len].to_vec(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn steps_per_delay(&self) -> usize {
        self.steps_per_delay
    }

    pub fn band(&self) -> &[f64] {
        &self.band
    }

    /// Entry at zero-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        if col >= row + self.steps_per_delay {
            self.band[col - row - self.steps_per_delay]
        } else {
            0.0
        }
    }

    /// Smallest `q` with `J^q = 0` predicted by the structure: `i` for `(i-1)N < n <= iN`.
    pub fn nilpotency_index(&self) -> usize {
        self.order.div_ceil(self.steps_per_delay)
    }

    pub fn to_dense(&self) -> Result<DenseMatrix> {
        if self.order > MAX_DENSE_ORDER {
            return Err(Error::TooLarge {
                limit: MAX_DENSE_ORDER,
                requested: self.order,
            });
        }
        let n = self.order;
        let mut data = vec![0.0; n * n];
        for r in 0..n {
            for c in r + self.steps_per_delay..n {
                data[r * n + c] = self.entry(r, c);
            }
        }
        Ok(DenseMatrix { order: n, data })
    }
}

/// Small row-major square matrix used to verify the nilpotency of `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    order: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn identity(order: usize) -> Self {
        let mut data = vec![0.0; order * order];
        for i in 0..order {
            data[i * order + i] = 1.0;
        }
        Self { order, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.order + col]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        let n = self.order;
        let mut data = vec![0.0; n * n];
        for r in 0..n {
            for k in 0..n {
                let lhs = self.data[r * n + k];
                if lhs == 0.0 {
                    continue;
                }
                let out = &mut data[r * n..(r + 1) * n];
                let rhs = &other.data[k * n..(k + 1) * n];
                for (o, &v) in out.iter_mut().zip(rhs) {
                    *o += lhs * v;
                }
            }
        }
        Self { order: n, data }
    }

    pub fn pow(&self, q: u32) -> Self {
        let mut result = Self::identity(self.order);
        for _ in 0..q {
            result = result.mul(self);
        }
        result
    }

    /// True when every entry is exactly `+0.0` or `-0.0`.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{FractionalOrder, L1Weights};

    fn kernel(len: usize) -> ComplementaryKernel {
        let w = L1Weights::new(FractionalOrder::new(0.5).unwrap(), 0.1, len).unwrap();
        ComplementaryKernel::new(&w, len).unwrap()
    }

    #[test]
    fn zero_when_n_at_most_big_n() {
        let p = kernel(10);
        let j = DelayMatrix::new(&p, 7, 7).unwrap();
        assert!(j.band().is_empty());
        assert!(j.to_dense().unwrap().is_zero());
        assert_eq!(j.nilpotency_index(), 1);
    }

    #[test]
    fn two_intervals_layout() {
        let p = kernel(10);
        let big_n = 5;
        let j = DelayMatrix::new(&p, 2 * big_n, big_n).unwrap().to_dense().unwrap();
        // first row: P_0 .. P_{N-1} in (one-based) columns N+1 .. 2N
        for c in 0..2 * big_n {
            let want = if c >= big_n { p.get(c - big_n) } else { 0.0 };
            assert_eq!(j.get(0, c), want);
        }
        // last populated row holds only P_0 in the final column
        assert_eq!(j.get(big_n - 1, 2 * big_n - 1), p.get(0));
        for r in big_n..2 * big_n {
            assert!((0..2 * big_n).all(|c| j.get(r, c) == 0.0));
        }
        assert!(!j.pow(1).is_zero());
        assert!(j.pow(2).is_zero());
    }

    #[test]
    fn dense_limit() {
        let p = kernel(300);
        let j = DelayMatrix::new(&p, 201, 3).unwrap();
        assert!(matches!(j.to_dense(), Err(Error::TooLarge { .. })));
    }
}
