//! Numerical core for the constant-delay reaction-subdiffusion equation
//!
//! ```text
//! D^α u = p u_xx + a(x) u + b u(x, t - τ) + f(x, t),   (x, t) ∈ (0, L) × (0, Kτ]
//! u = φ on [0, L] × [-τ, 0],   u = 0 on the boundary
//! ```
//!
//! discretized with the L1 formula on a uniform time mesh (`ρ = τ / N`) and
//! continuous piecewise-linear finite elements in space.
//!
//! The crate is `no_std` (it needs `alloc`) and performs no IO. File formats,
//! the command-line front end and thread pools live in the `l1delay-cli` crate.
//!
//! Layout:
//! - [`kernel`]: gamma function, L1 weights, the complementary kernel `P_l`,
//!   the delay matrix `J` and the `K_{β,n}` bound.
//! - [`fem`]: 1D mesh, tridiagonal assembly, Thomas solver, L² errors.
//! - [`solver`]: problem description, history projection and time stepping.
//! - [`studies`]: manufactured solution, truncation profiling and convergence tables.
#![no_std]
#![warn(missing_debug_implementations)]
// `!(x > 0.0)` is used on purpose so NaN fails validation; published
// coefficients are kept digit for digit.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod fem;
pub mod kernel;
pub mod solver;
pub mod studies;

pub use error::{Error, Result};
pub use fem::{FemVector, SpatialMesh, TridiagonalMatrix};
pub use kernel::{
    gamma, l1_apply, omega, ComplementaryKernel, DelayMatrix, FractionalOrder, KappaBound,
    L1Weights, TimeGrid,
};
pub use solver::{ProblemSpec, SolverState, Trajectory};
pub use studies::{ConvergenceTable, ManufacturedCase, StudyKind, TruncationProfile};
