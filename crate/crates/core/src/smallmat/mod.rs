//! Small dense linear algebra: matrices and vectors of dimension up to a
//! handful, the matrix exponential, exact sampling of LTI systems, linear
//! solves and a Hurwitz test.

mod expm;
mod linsolve;
mod matrix;
mod stability;
mod vector;

pub use expm::{mat_exp, zoh_discretize};
pub use linsolve::{solve, solve_matrix};
pub use matrix::Matrix;
pub use stability::{characteristic_polynomial, is_hurwitz, MAX_STABILITY_DIM};
pub use vector::Vector;
