use alloc::vec::Vec;

use super::ManufacturedCase;
use crate::fem::{l2_error, SpatialMesh};
use crate::kernel::TimeGrid;
use crate::solver::SolverState;
use crate::{Error, Result};

/// Per-step `‖u^n - U_h^n‖_0` for `n = 1..=KN` of one manufactured run.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTrace {
    pub steps_per_delay: usize,
    pub elements: usize,
    /// `errors[n - 1]` belongs to step `n`.
    pub errors: Vec<f64>,
}

impl ErrorTrace {
    pub fn intervals(&self) -> usize {
        self.errors.len() / self.steps_per_delay
    }

    /// `E(h, ρ, i) = max_{(i-1)N < n <= iN} ‖u^n - U_h^n‖_0`.
    pub fn interval_max(&self, interval: usize) -> f64 {
        let n = self.steps_per_delay;
        self.errors[(interval - 1) * n..interval * n]
            .iter()
            .fold(0.0f64, |m, &e| m.max(e))
    }

    /// `‖u^{iN} - U_h^{iN}‖_0`.
    pub fn node_error(&self, interval: usize) -> f64 {
        self.errors[interval * self.steps_per_delay - 1]
    }

    pub fn max_error(&self) -> f64 {
        self.errors.iter().fold(0.0f64, |m, &e| m.max(e))
    }
}

/// Solve the manufactured problem with `N` steps per delay and `M` elements,
/// recording the L² error at every step.
pub fn error_trace(case: &ManufacturedCase, steps_per_delay: usize, elements: usize) -> Result<ErrorTrace> {
    let problem = case.problem().clone();
    let mesh = SpatialMesh::uniform(problem.length, elements)?;
    let grid = TimeGrid::new(problem.tau, steps_per_delay, problem.intervals)?;
    let mut state = SolverState::new(case.alpha(), problem, mesh, grid)?;
    let mut errors = Vec::with_capacity(grid.final_step());
    while !state.is_finished() {
        let n = state.next_step();
        let frame = state.advance()?;
        let t = grid.time(n as i64);
        errors.push(l2_error(&frame, |x| case.exact(x, t), state.mesh()));
    }
    Ok(ErrorTrace {
        steps_per_delay,
        elements,
        errors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StudyKind {
    /// Interval maxima `E(h, ρ, i)` under time refinement.
    Temporal,
    /// Errors at the delay nodes `t_{iN}` under time refinement.
    DelayNodes,
    /// Last-interval maximum under mesh refinement.
    Spatial,
}

/// The parameter held fixed across the rows of a table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fixed {
    MeshWidth(f64),
    StepsPerDelay(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    /// `N` for time studies, `M` for space studies.
    pub resolution: usize,
    pub errors: Vec<f64>,
    /// `log2(E_{r-1} / E_r)`; absent on the first row.
    pub rates: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub kind: StudyKind,
    pub alpha: f64,
    pub fixed: Fixed,
    /// Delay-interval index `i` of each error column.
    pub columns: Vec<usize>,
    pub rows: Vec<TableRow>,
}

/// Resolutions must be non-empty and double from row to row.
pub fn check_doubling(resolutions: &[usize]) -> Result<()> {
    if resolutions.is_empty() {
        return Err(Error::InvalidResolutions("empty"));
    }
    if resolutions[0] == 0 {
        return Err(Error::InvalidResolutions("resolutions must be positive"));
    }
    if resolutions.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(Error::InvalidResolutions("each resolution must double the previous one"));
    }
    Ok(())
}

impl ConvergenceTable {
    fn from_columns(
        kind: StudyKind,
        alpha: f64,
        fixed: Fixed,
        columns: Vec<usize>,
        traces: &[ErrorTrace],
        resolution: impl Fn(&ErrorTrace) -> usize,
        measure: impl Fn(&ErrorTrace, usize) -> f64,
    ) -> Self {
        let mut rows: Vec<TableRow> = Vec::with_capacity(traces.len());
        for trace in traces {
            let errors: Vec<f64> = columns.iter().map(|&i| measure(trace, i)).collect();
            let rates = match rows.last() {
                Some(prev) => prev
                    .errors
                    .iter()
                    .zip(&errors)
                    .map(|(p, e)| Some(libm::log2(p / e)))
                    .collect(),
                None => alloc::vec![None; errors.len()],
            };
            rows.push(TableRow {
                resolution: resolution(trace),
                errors,
                rates,
            });
        }
        Self {
            kind,
            alpha,
            fixed,
            columns,
            rows,
        }
    }

    /// Temporal table from traces ordered by increasing `N`.
    pub fn temporal(alpha: f64, h: f64, traces: &[ErrorTrace]) -> Self {
        let k = traces.first().map_or(0, ErrorTrace::intervals);
        Self::from_columns(
            StudyKind::Temporal,
            alpha,
            Fixed::MeshWidth(h),
            (1..=k).collect(),
            traces,
            |t| t.steps_per_delay,
            ErrorTrace::interval_max,
        )
    }

    /// Delay-node table from traces ordered by increasing `N`.
    pub fn delay_nodes(alpha: f64, h: f64, traces: &[ErrorTrace]) -> Self {
        let k = traces.first().map_or(0, ErrorTrace::intervals);
        Self::from_columns(
            StudyKind::DelayNodes,
            alpha,
            Fixed::MeshWidth(h),
            (1..=k).collect(),
            traces,
            |t| t.steps_per_delay,
            ErrorTrace::node_error,
        )
    }

    /// Spatial table (last delay interval) from traces ordered by increasing `M`.
    pub fn spatial(alpha: f64, steps_per_delay: usize, traces: &[ErrorTrace]) -> Self {
        let k = traces.first().map_or(0, ErrorTrace::intervals);
        Self::from_columns(
            StudyKind::Spatial,
            alpha,
            Fixed::StepsPerDelay(steps_per_delay),
            alloc::vec![k],
            traces,
            |t| t.elements,
            ErrorTrace::interval_max,
        )
    }

    /// Error column for delay interval `i`, top to bottom.
    pub fn column(&self, interval: usize) -> Option<Vec<f64>> {
        let c = self.columns.iter().position(|&i| i == interval)?;
        Some(self.rows.iter().map(|r| r.errors[c]).collect())
    }

    /// Rate column for delay interval `i`; the first row has none.
    pub fn rate_column(&self, interval: usize) -> Option<Vec<f64>> {
        let c = self.columns.iter().position(|&i| i == interval)?;
        Some(self.rows.iter().filter_map(|r| r.rates[c]).collect())
    }

    pub fn max_error(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| r.errors.iter())
            .fold(0.0f64, |m, &e| m.max(e))
    }
}

/// Number of elements for mesh width `h` on `(0, L)`.
pub fn elements_for(length: f64, h: f64) -> Result<usize> {
    let m = libm::round(length / h);
    if !(h > 0.0) || !(m >= 2.0) || !m.is_finite() {
        return Err(Error::InvalidMesh("mesh width must give at least two elements"));
    }
    Ok(m as usize)
}

pub fn temporal_study(case: &ManufacturedCase, h: f64, steps: &[usize]) -> Result<ConvergenceTable> {
    check_doubling(steps)?;
    let m = elements_for(case.problem().length, h)?;
    let traces = steps
        .iter()
        .map(|&n| error_trace(case, n, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable::temporal(case.alpha().get(), h, &traces))
}

pub fn delay_node_study(case: &ManufacturedCase, h: f64, steps: &[usize]) -> Result<ConvergenceTable> {
    check_doubling(steps)?;
    let m = elements_for(case.problem().length, h)?;
    let traces = steps
        .iter()
        .map(|&n| error_trace(case, n, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable::delay_nodes(case.alpha().get(), h, &traces))
}

pub fn spatial_study(case: &ManufacturedCase, steps_per_delay: usize, elements: &[usize]) -> Result<ConvergenceTable> {
    check_doubling(elements)?;
    let traces = elements
        .iter()
        .map(|&m| error_trace(case, steps_per_delay, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable::spatial(case.alpha().get(), steps_per_delay, &traces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn trace(n: usize, errors: Vec<f64>) -> ErrorTrace {
        ErrorTrace {
            steps_per_delay: n,
            elements: 8,
            errors,
        }
    }

    #[test]
    fn interval_max_and_nodes() {
        let t = trace(2, vec![0.5, 0.1, 0.2, 0.3, 0.05, 0.04]);
        assert_eq!(t.intervals(), 3);
        assert_eq!(t.interval_max(1), 0.5);
        assert_eq!(t.interval_max(2), 0.3);
        assert_eq!(t.interval_max(3), 0.05);
        assert_eq!(t.node_error(1), 0.1);
        assert_eq!(t.node_error(3), 0.04);
        assert_eq!(t.max_error(), 0.5);
    }

    #[test]
    fn rates_are_log2_ratios() {
        let a = trace(1, vec![0.4, 0.2, 0.1]);
        let b = trace(2, vec![0.2, 0.2, 0.1, 0.1, 0.025, 0.025]);
        let table = ConvergenceTable::temporal(0.5, 0.1, &[a, b]);
        assert_eq!(table.columns, vec![1, 2, 3]);
        assert_eq!(table.rows[0].rates, vec![None, None, None]);
        assert_eq!(table.rows[1].rates, vec![Some(1.0), Some(1.0), Some(2.0)]);
        assert_eq!(table.rate_column(3).unwrap(), vec![2.0]);
        assert_eq!(table.column(1).unwrap(), vec![0.4, 0.2]);
        assert!(table.column(4).is_none());
    }

    #[test]
    fn doubling_required() {
        assert!(check_doubling(&[100, 200, 400]).is_ok());
        assert!(check_doubling(&[8]).is_ok());
        assert!(check_doubling(&[]).is_err());
        assert!(check_doubling(&[100, 300]).is_err());
        assert!(check_doubling(&[0, 0]).is_err());
    }

    #[test]
    fn element_count() {
        assert_eq!(elements_for(1.0, 0.001).unwrap(), 1000);
        assert_eq!(elements_for(1.0, 1.0 / 30.0).unwrap(), 30);
        assert!(elements_for(1.0, 0.9).is_err());
    }
}
