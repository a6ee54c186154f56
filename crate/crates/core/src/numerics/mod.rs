//! Self-contained dense complex linear algebra for matrices of dimension at
//! most 16: arithmetic, Hermitian eigendecomposition, cubic roots, and null
//! vectors. Nothing here knows about density matrices; the physics layers
//! build on these primitives.

mod cubic;
mod eigen;
mod linsolve;
mod matrix;
mod nullspace;

pub use cubic::{cubic_roots, CubicCoefficients};
pub use eigen::hermitian_eigen;
pub use linsolve::LuFactors;
pub use matrix::{ComplexMatrix, MAX_DIM};
pub use nullspace::null_vector;
