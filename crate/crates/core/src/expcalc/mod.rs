//! Exponential polynomials over ℚ(e), boundary functionals on `[0, 1]` and
//! constant-coefficient differential operators with integer characteristic
//! roots.

mod diffop;
mod functional;
mod poly;

use thiserror::Error;

pub use diffop::DiffOp;
pub use functional::{eval_matrix_fn, BoundaryFunctional, FunctionalKey};
pub use poly::ExpPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpCalcError {
    #[error("evaluation point must be 0 or 1, got {0}")]
    UnsupportedPoint(i64),
    #[error("operator must be monic")]
    NotMonic,
    #[error("operator must have order at least 1")]
    OrderZero,
    #[error("characteristic polynomial does not split over the integers: {0} remains")]
    NonIntegerRoots(String),
    #[error("unsupported operator: {0}")]
    Unsupported(String),
}

pub fn differentiate(f: &ExpPoly) -> ExpPoly {
    f.differentiate()
}

pub fn apply_diffop(t: &DiffOp, f: &ExpPoly) -> ExpPoly {
    t.apply(f)
}

pub fn integrate_0x(f: &ExpPoly) -> ExpPoly {
    f.integrate_0x()
}

pub fn evaluate(f: &ExpPoly, c: i64) -> Result<crate::scalar::RatFuncE, ExpCalcError> {
    f.evaluate(c)
}

pub fn apply_functional(beta: &BoundaryFunctional, f: &ExpPoly) -> crate::scalar::RatFuncE {
    beta.apply(f)
}

pub fn compose_with_diffop(beta: &BoundaryFunctional, t: &DiffOp) -> BoundaryFunctional {
    beta.compose_with_diffop(t)
}

pub fn kernel_basis(t: &DiffOp) -> Vec<ExpPoly> {
    t.kernel_basis()
}

pub fn right_inverse_apply(t: &DiffOp, f: &ExpPoly) -> ExpPoly {
    t.right_inverse_apply(f)
}
