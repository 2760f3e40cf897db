use alloc::vec;
use alloc::vec::Vec;

use crate::fem::FemVector;
use crate::kernel::TimeGrid;

/// Solution levels `U^n`, `n = -N, ..., KN`, all retained.
///
/// Storage is one contiguous time series per degree of freedom
/// (`data[dof * levels + (n + N)]`), so the history sum of every step is a set
/// of contiguous dot products.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    grid: TimeGrid,
    dofs: usize,
    levels: usize,
    filled: usize,
    data: Vec<f64>,
}

impl Trajectory {
    pub(crate) fn with_capacity(grid: TimeGrid, dofs: usize) -> Self {
        let levels = grid.level_count();
        Self {
            grid,
            dofs,
            levels,
            filled: 0,
            data: vec![0.0; levels * dofs],
        }
    }

    pub(crate) fn push(&mut self, frame: &[f64]) {
        assert_eq!(frame.len(), self.dofs);
        assert!(self.filled < self.levels, "trajectory is full");
        let f = self.filled;
        for (d, &v) in frame.iter().enumerate() {
            self.data[d * self.levels + f] = v;
        }
        self.filled += 1;
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn dofs(&self) -> usize {
        self.dofs
    }

    /// Number of stored levels.
    pub fn len(&self) -> usize {
        self.filled
    }

    pub fn is_empty(&self) -> bool {
        self.filled == 0
    }

    pub fn is_complete(&self) -> bool {
        self.filled == self.levels
    }

    /// Index `n` of the most recent stored level.
    pub fn last_step(&self) -> i64 {
        self.filled as i64 - 1 - self.grid.steps_per_delay() as i64
    }

    fn slot(&self, n: i64) -> usize {
        let f = n + self.grid.steps_per_delay() as i64;
        assert!(
            f >= 0 && (f as usize) < self.filled,
            "time level {n} not stored"
        );
        f as usize
    }

    #[inline]
    pub fn value(&self, n: i64, dof: usize) -> f64 {
        self.data[dof * self.levels + self.slot(n)]
    }

    pub fn frame(&self, n: i64) -> FemVector {
        let mut out = FemVector::zeros(self.dofs);
        self.frame_into(n, &mut out);
        out
    }

    pub fn frame_into(&self, n: i64, out: &mut [f64]) {
        let f = self.slot(n);
        for (d, o) in out.iter_mut().enumerate() {
            *o = self.data[d * self.levels + f];
        }
    }

    /// Stored time series of one degree of freedom, starting at `n = -N`.
    pub fn series(&self, dof: usize) -> &[f64] {
        let start = dof * self.levels;
        &self.data[start..start + self.filled]
    }

    /// Iterate `(n, U^n)` over stored levels.
    pub fn frames(&self) -> impl Iterator<Item = (i64, FemVector)> + '_ {
        let first = -(self.grid.steps_per_delay() as i64);
        (first..=self.last_step()).map(move |n| (n, self.frame(n)))
    }
}
