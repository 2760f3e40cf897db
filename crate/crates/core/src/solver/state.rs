use alloc::vec;
use alloc::vec::Vec;

use super::{ProblemSpec, Trajectory};
use crate::fem::{assemble, load_vector_into, Assembly, FemVector, SpatialMesh, ThomasFactorization};
use crate::kernel::{FractionalOrder, L1Weights, TimeGrid};
use crate::{Error, Result};

/// History values on the boundary larger than this violate the Dirichlet condition.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

fn check_inputs(problem: &ProblemSpec, mesh: &SpatialMesh, grid: &TimeGrid) -> Result<()> {
    if grid.intervals() != problem.intervals {
        return Err(Error::InvalidGrid("grid horizon differs from the problem's K"));
    }
    if (grid.tau() - problem.tau).abs() > 4.0 * f64::EPSILON * problem.tau {
        return Err(Error::InvalidGrid("grid delay differs from the problem's tau"));
    }
    if (mesh.length() - problem.length).abs() > 4.0 * f64::EPSILON * problem.length {
        return Err(Error::InvalidMesh("mesh length differs from the problem's domain"));
    }
    Ok(())
}

/// Nodal interpolation of `φ(·, t_n)` for `n = -N, ..., 0`.
pub fn init_history(problem: &ProblemSpec, mesh: &SpatialMesh, grid: &TimeGrid) -> Result<Trajectory> {
    check_inputs(problem, mesh, grid)?;
    let mut trajectory = Trajectory::with_capacity(*grid, mesh.dofs());
    let phi = &problem.history;
    let n_delay = grid.steps_per_delay() as i64;
    for n in -n_delay..=0 {
        let t = grid.time(n);
        for x in [0.0, mesh.length()] {
            let v = phi(x, t);
            if !(v.abs() <= BOUNDARY_TOLERANCE) {
                return Err(Error::Compatibility { time: t, value: v });
            }
        }
        let frame = mesh.interpolate(|x| phi(x, t));
        if frame.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { step: n });
        }
        trajectory.push(&frame);
    }
    Ok(trajectory)
}

/// Everything needed to advance the scheme one step at a time.
#[derive(Debug)]
pub struct SolverState {
    problem: ProblemSpec,
    mesh: SpatialMesh,
    grid: TimeGrid,
    weights: L1Weights,
    assembly: Assembly,
    system: ThomasFactorization,
    trajectory: Trajectory,
    // reversed[m] = a_{L-m-1} - a_{L-m}, L = KN, so the coefficients of step n
    // are the contiguous tail reversed[L-n+1..L].
    reversed: Vec<f64>,
    combined: Vec<f64>,
    rhs: Vec<f64>,
    load: Vec<f64>,
}

impl SolverState {
    /// Project the history, assemble and factor `a_0 M + S` once.
    pub fn new(alpha: FractionalOrder, problem: ProblemSpec, mesh: SpatialMesh, grid: TimeGrid) -> Result<Self> {
        let trajectory = init_history(&problem, &mesh, &grid)?;
        let total = grid.final_step();
        let weights = L1Weights::new(alpha, grid.rho(), total)?;
        let assembly = assemble(&mesh, problem.p, &*problem.reaction)?;
        let system = assembly
            .mass
            .scaled_add(weights.get(0), &assembly.stiffness)
            .factor()?;
        let a = weights.as_slice();
        let mut reversed = vec![0.0; total];
        #[allow(clippy::needless_range_loop)]
        for m in 1..total {
            let k = total - m;
            reversed[m] = a[k - 1] - a[k];
        }
        let dofs = mesh.dofs();
        Ok(Self {
            problem,
            mesh,
            grid,
            weights,
            assembly,
            system,
            trajectory,
            reversed,
            combined: vec![0.0; dofs],
            rhs: vec![0.0; dofs],
            load: vec![0.0; dofs],
        })
    }

    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn mesh(&self) -> &SpatialMesh {
        &self.mesh
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn weights(&self) -> &L1Weights {
        &self.weights
    }

    pub fn assembly(&self) -> &Assembly {
        &self.assembly
    }

    pub fn trajectory(&self) -> &Trajectory {
        &self.trajectory
    }

    pub fn into_trajectory(self) -> Trajectory {
        self.trajectory
    }

    /// Index of the next step to be computed.
    pub fn next_step(&self) -> usize {
        (self.trajectory.last_step() + 1) as usize
    }

    pub fn is_finished(&self) -> bool {
        self.next_step() > self.grid.final_step()
    }

    /// Right-hand side of step `n` from the stored levels `< n`, into `self.rhs`.
    fn build_rhs(&mut self, n: usize) {
        let total = self.grid.final_step();
        let n_delay = self.grid.steps_per_delay();
        let a_last = self.weights.get(n - 1);
        let coeffs = &self.reversed[total + 1 - n..total];
        for d in 0..self.mesh.dofs() {
            let series = self.trajectory.series(d);
            // series[N + j] = U^j; U^{n-N} sits at series[n]
            let hist = dot(coeffs, &series[n_delay + 1..n_delay + n]) + a_last * series[n_delay];
            self.combined[d] = hist + self.problem.b * series[n];
        }
        self.assembly.mass.mul_into(&self.combined, &mut self.rhs);

        let t = self.grid.time(n as i64);
        let f = &self.problem.source;
        load_vector_into(&self.mesh, |x| f(x, t), &mut self.load);
        for (r, l) in self.rhs.iter_mut().zip(&self.load) {
            *r += l;
        }
    }

    fn step(&mut self) -> Result<()> {
        let n = self.next_step();
        assert!(n <= self.grid.final_step(), "run already complete");
        self.build_rhs(n);
        self.system.solve_in_place(&mut self.rhs)?;
        if self.rhs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { step: n as i64 });
        }
        self.trajectory.push(&self.rhs);
        Ok(())
    }

    /// Compute, store and return the next level `U^n`.
    pub fn advance(&mut self) -> Result<FemVector> {
        self.step()?;
        Ok(self.trajectory.frame(self.trajectory.last_step()))
    }

    /// Advance through the final step `KN`.
    pub fn run_to_end(&mut self) -> Result<()> {
        while !self.is_finished() {
            self.step()?;
        }
        Ok(())
    }

    /// `‖(a_0 M + S) U^n - rhs^n‖_∞ / max(‖rhs^n‖_∞, ‖(a_0 M + S) U^n‖_∞)` for a stored step `n >= 1`.
    pub fn scheme_residual(&mut self, n: usize) -> f64 {
        assert!(n >= 1 && n as i64 <= self.trajectory.last_step());
        self.build_rhs(n);
        let system = self
            .assembly
            .mass
            .scaled_add(self.weights.get(0), &self.assembly.stiffness);
        let lhs = system.mul_vec(&self.trajectory.frame(n as i64));
        let scale = lhs
            .iter()
            .chain(self.rhs.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let diff = lhs
            .iter()
            .zip(&self.rhs)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if scale == 0.0 {
            0.0
        } else {
            diff / scale
        }
    }
}

/// Solve every step `n = 1, ..., KN` and return the full trajectory.
pub fn run(alpha: FractionalOrder, problem: ProblemSpec, mesh: SpatialMesh, grid: TimeGrid) -> Result<Trajectory> {
    let mut state = SolverState::new(alpha, problem, mesh, grid)?;
    state.run_to_end()?;
    Ok(state.into_trajectory())
}

/// Dot product with eight independent partial sums so the loop vectorizes.
/// The summation order depends only on the length, keeping runs bit-reproducible.
#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let ca = a.chunks_exact(8);
    let cb = b.chunks_exact(8);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    let mut acc = [0.0f64; 8];
    for (x, y) in ca.zip(cb) {
        for i in 0..8 {
            acc[i] += x[i] * y[i];
        }
    }
    let mut s = ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7]));
    for (x, y) in ra.iter().zip(rb) {
        s += x * y;
    }
    s
}
