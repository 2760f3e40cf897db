//! Continuous piecewise-linear finite elements on an interval with homogeneous
//! Dirichlet conditions at both ends.
//!
//! Degrees of freedom are the `M - 1` interior nodal values; all operators are
//! tridiagonal.

mod assembly;
mod mesh;
pub mod quadrature;
mod tridiag;
mod vector;

pub use assembly::{assemble, l2_error, load_vector, load_vector_into, Assembly};
pub use mesh::SpatialMesh;
pub use tridiag::{solve_tridiagonal, ThomasFactorization, TridiagonalMatrix};
pub use vector::FemVector;
