//! Linear two-point boundary problems on `[0, 1]` with constant coefficients,
//! their generalized Green's operators, and the reverse order law for
//! products of such operators.

mod problem;
mod rol;
mod spaces;

use thiserror::Error;

use crate::expcalc::ExpCalcError;
use crate::matrix::MatrixError;

pub use problem::{preimage_of_exceptional, write_exceptional, BoundaryProblem, GreenSpec, Regularity};
pub use rol::{compose, product_apply, rol_check, test_functions, BoundaryRolReport, BoundaryWitness};
pub use spaces::{Coordinates, FiniteSpan, FnSpan, FunctionDuality, FunctionalSpan};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("boundary conditions are linearly dependent")]
    DependentConditions,
    #[error("exceptional functions are linearly dependent")]
    DependentExceptional,
    #[error("boundary problem is not semi-regular: some nonzero kernel function satisfies every condition")]
    NotSemiRegular,
    #[error("exceptional space is not a complement of T(B⊥)")]
    NotComplement,
    #[error("reverse order law fails: condition(s) {failed:?} do not hold")]
    ReverseOrderLawFails { failed: Vec<&'static str> },
    #[error("inconsistent linear system for {0}")]
    Inconsistent(&'static str),
    #[error(transparent)]
    ExpCalc(#[from] ExpCalcError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

pub fn regularity(problem: &BoundaryProblem) -> Regularity {
    problem.regularity()
}

pub fn compatibility(problem: &BoundaryProblem) -> Result<FunctionalSpan, BoundaryError> {
    problem.compatibility()
}

pub fn green_apply(spec: &GreenSpec, f: &crate::expcalc::ExpPoly) -> Result<crate::expcalc::ExpPoly, BoundaryError> {
    spec.green_apply(f)
}
