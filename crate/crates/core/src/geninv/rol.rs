use crate::matrix::Matrix;
use crate::scalar::{Field, Rational};
use crate::subspace::Subspace;

use super::conditions::{pq_projector_conditions, RolReport, SpaceWitness};
use super::construct::{construct_outer, construct_reflexive};
use super::verify::verify;
use super::GenInvError;

/// `(T₁T₂)⁻¹(W₁) = G₂(T₁⁻¹(W₁) ∩ Im T₂) ⊕ Ker T₂` for an inner inverse `G₂`
/// of `T₂ : U → V` and `T₁ : V → W`.
pub fn composition_preimage<F: Field>(
    t1: &Matrix<F>,
    g2: &Matrix<F>,
    t2: &Matrix<F>,
    w1: &Subspace<F>,
) -> Result<Subspace<F>, GenInvError> {
    if !verify(t2, g2)?.inner {
        return Err(GenInvError::Precondition("G₂ is not an inner inverse of T₂"));
    }
    let through = w1.preimage(t1)?.intersect(&Subspace::image_of(t2))?;
    let lifted = through.image(g2)?;
    let ker = Subspace::kernel_of(t2);
    if !lifted.is_direct(&ker)? {
        return Err(GenInvError::NotDirect("G₂(T₁⁻¹(W₁) ∩ Im T₂) ⊕ Ker T₂"));
    }
    Ok(lifted.sum(&ker)?)
}

fn check_chain<F: Field>(t1: &Matrix<F>, t2: &Matrix<F>) -> Result<(), GenInvError> {
    if t1.cols() != t2.rows() {
        return Err(crate::matrix::MatrixError::DimensionMismatch(format!(
            "T₁ is {}x{} but T₂ is {}x{}",
            t1.rows(),
            t1.cols(),
            t2.rows(),
            t2.cols()
        ))
        .into());
    }
    Ok(())
}

/// Decides whether `G₂G₁` is an outer inverse of `T₁T₂` for
/// `G₁ = O(T₁, B₁, E₁)` and `G₂ = O(T₂, B₂, E₂)` from the defining spaces.
/// Statement (i) is checked on the explicitly constructed inverses.
pub fn rol_outer_check<F: Field>(
    t1: &Matrix<F>,
    t2: &Matrix<F>,
    b1: &Subspace<F>,
    e1: &Subspace<F>,
    b2: &Subspace<F>,
    e2: &Subspace<F>,
) -> Result<RolReport<SpaceWitness<F>>, GenInvError> {
    check_chain(t1, t2)?;
    let g1 = construct_outer(t1, b1, e1)?;
    let g2 = construct_outer(t2, b2, e2)?;
    // Q = T₂G₂ projects onto T₂(B₂) along E₂, P = G₁T₁ onto B₁ along T₁⁻¹(E₁);
    // the law holds iff QP is a projector.
    let (mut conditions, witnesses) =
        pq_projector_conditions(&b2.image(t2)?, e2, b1, &e1.preimage(t1)?)?;
    let product = g2.dot(&g1);
    conditions.i = Some(verify(&t1.dot(t2), &product)?.outer);
    Ok(RolReport::from_conditions(conditions, witnesses).map_witnesses(SpaceWitness::from))
}

/// Decides whether `G₂G₁` is an inner inverse of `T₁T₂` for inner inverses
/// with `Im G₁T₁ = B₁` and `Ker T₂G₂ = E₂`. Statement (i) is checked on
/// reflexive inverses built with default complements for `E₁` and `B₂`.
pub fn rol_inner_check<F: Field>(
    t1: &Matrix<F>,
    t2: &Matrix<F>,
    b1: &Subspace<F>,
    e2: &Subspace<F>,
) -> Result<RolReport<SpaceWitness<F>>, GenInvError> {
    check_chain(t1, t2)?;
    let ker1 = Subspace::kernel_of(t1);
    let im2 = Subspace::image_of(t2);
    let (mut conditions, witnesses) = pq_projector_conditions(b1, &ker1, &im2, e2)?;
    let e1 = Subspace::image_of(t1).complement();
    let b2 = Subspace::kernel_of(t2).complement();
    let g1 = construct_reflexive(t1, b1, &e1)?;
    let g2 = construct_reflexive(t2, &b2, e2)?;
    conditions.i = Some(verify(&t1.dot(t2), &g2.dot(&g1))?.inner);
    Ok(RolReport::from_conditions(conditions, witnesses).map_witnesses(SpaceWitness::from))
}

/// `G₂G₁` is an inner inverse of `T₁T₂` for every pair of inner inverses
/// exactly when `T₁T₂ = 0` or `Ker T₁ ≤ Im T₂`.
pub fn rol_all_inner<F: Field>(t1: &Matrix<F>, t2: &Matrix<F>) -> Result<bool, GenInvError> {
    check_chain(t1, t2)?;
    Ok(t1.dot(t2).is_zero() || Subspace::image_of(t2).includes(&Subspace::kernel_of(t1))?)
}

/// Defining spaces for algebraic generalized inverses whose product in
/// reverse order is again an algebraic generalized inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RolConstruction<F: Field = Rational> {
    pub b1: Subspace<F>,
    pub e1: Subspace<F>,
    pub b2: Subspace<F>,
    pub e2: Subspace<F>,
    /// Complement of `Im T₂ ∩ Ker T₁` in `Ker T₁`.
    pub v1: Subspace<F>,
    /// Complement of `Im T₂ ∩ Ker T₁` in `Im T₂`.
    pub v2: Subspace<F>,
    /// Complement of `Im T₂ + Ker T₁` in `V`.
    pub v3: Subspace<F>,
}

impl<F: Field> RolConstruction<F> {
    /// `(G₁, G₂)` as algebraic generalized inverses.
    pub fn inverses(&self, t1: &Matrix<F>, t2: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>), GenInvError> {
        Ok((
            construct_reflexive(t1, &self.b1, &self.e1)?,
            construct_reflexive(t2, &self.b2, &self.e2)?,
        ))
    }
}

pub fn rol_construct<F: Field>(t1: &Matrix<F>, t2: &Matrix<F>) -> Result<RolConstruction<F>, GenInvError> {
    check_chain(t1, t2)?;
    let ker1 = Subspace::kernel_of(t1);
    let im2 = Subspace::image_of(t2);
    let common = im2.intersect(&ker1)?;
    let v1 = common.complement_within(&ker1)?;
    let v2 = common.complement_within(&im2)?;
    let v3 = im2.sum(&ker1)?.complement();
    Ok(RolConstruction {
        b1: v2.sum(&v3)?,
        e1: Subspace::image_of(t1).complement(),
        b2: Subspace::kernel_of(t2).complement(),
        e2: v1.sum(&v3)?,
        v1,
        v2,
        v3,
    })
}
