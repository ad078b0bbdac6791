//! Exact generalized inverses of linear maps, reverse order laws for their
//! products, and generalized Green's operators of linear ordinary boundary
//! problems with constant coefficients.

pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use matrix::{Matrix, MatrixError, QMatrix};
pub use scalar::{Field, RatFuncE, Rational};
pub use subspace::{DualSubspace, Subspace, SubspaceError};
pub mod geninv;
pub mod expcalc;
pub mod boundary;
pub mod cli;
