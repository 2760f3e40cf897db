//! Fractional-calculus kernels: special functions, the L1 discretization of
//! the Caputo derivative and the discrete objects used in the Grönwall-type
//! stability analysis.

mod complementary;
mod delay_matrix;
mod gamma;
mod kappa;
mod weights;

pub use complementary::{ComplementaryKernel, KernelCheck};
pub use delay_matrix::{DelayMatrix, DenseMatrix, MAX_DENSE_ORDER};
pub use gamma::{gamma, omega};
pub use kappa::{beta_large_order, beta_small_order, kappa, KappaBound, BETA_LOG};
pub use weights::{l1_apply, FractionalOrder, L1Weights, TimeGrid};
