//! Projectors, generalized inverses defined by their image and kernel, and
//! decision procedures for the reverse order law of their products.

mod conditions;
mod construct;
mod fredholm;
mod implicit;
mod projector;
mod rol;
mod verify;

use thiserror::Error;

use crate::matrix::MatrixError;
use crate::subspace::SubspaceError;

pub use conditions::{
    pq_projector_conditions, Conditions, ConditionWitness, RolReport, SpaceWitness, Witnessed,
};
pub use construct::{
    construct_inner, construct_outer, construct_reflexive, DefiningImage, GenInvKind, GenInvSpec,
};
pub use fredholm::{
    cor_outer_conditions, fredholm_rol_outer_check, DualRolReport, DualityWitness, FiniteDuality,
    StandardDuality,
};
pub use implicit::{product_implicit, ImplicitProduct};
pub use projector::{projector, projector_product_classify, Projector, ProjectorProductReport};
pub use rol::{
    composition_preimage, rol_all_inner, rol_construct, rol_inner_check, rol_outer_check,
    RolConstruction,
};
pub use verify::{verify, SevenWay, Verification};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenInvError {
    #[error("{0}")]
    Precondition(&'static str),
    #[error("inner action must be {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ActionShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("reverse order law fails: condition(s) {failed:?} do not hold")]
    ReverseOrderLawFails { failed: Vec<&'static str> },
    #[error("sum {0} is not direct")]
    NotDirect(&'static str),
    #[error("inconsistent defining data: {0}")]
    Inconsistent(&'static str),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
