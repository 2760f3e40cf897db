//! Fully discrete L1 / finite element time stepping with a constant delay.
//!
//! At every step `n = 1, ..., KN` the solver solves
//!
//! ```text
//! (a_0 M + S) U^n = M [ Σ_{k=1}^{n-1} (a_{k-1} - a_k) U^{n-k} + a_{n-1} U^0 + b U^{n-N} ] + F^n
//! ```
//!
//! where `M` is the mass matrix, `S` the stiffness matrix of
//! `B(u, v) = p(u', v') - (a u, v)` and `F^n` the load of `f(·, t_n)`.

mod problem;
mod state;
mod trajectory;

pub use problem::{ProblemSpec, SpaceFn, SpaceTimeFn};
pub use state::{init_history, run, SolverState};
pub use trajectory::Trajectory;
