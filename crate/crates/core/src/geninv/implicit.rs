use crate::matrix::Matrix;
use crate::scalar::{Field, Rational};
use crate::subspace::{DualSubspace, Subspace};

use super::construct::construct_outer;
use super::rol::rol_outer_check;
use super::GenInvError;

/// `G₂G₁` described by the orthogonal of its image and by its kernel, as an
/// outer inverse of `T₁T₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitProduct<F: Field = Rational> {
    /// `T₁T₂`.
    pub operator: Matrix<F>,
    /// `𝓑₂ ⊕ (𝓑₁ ∩ E₂⊥)T₂`.
    pub dual_image: DualSubspace<F>,
    /// `E₁ ⊕ T₁(B₁ ∩ E₂)`.
    pub kernel: Subspace<F>,
}

impl<F: Field> ImplicitProduct<F> {
    pub fn image(&self) -> Subspace<F> {
        self.dual_image.orthogonal()
    }

    /// The explicit matrix `O(T₁T₂, image, kernel)`.
    pub fn realize(&self) -> Result<Matrix<F>, GenInvError> {
        construct_outer(&self.operator, &self.image(), &self.kernel)
    }
}

/// Defining spaces of `G₂G₁` for `G₁ = O(T₁, 𝓑₁⊥, E₁)` and
/// `G₂ = O(T₂, 𝓑₂⊥, E₂)`, computed without forming either inverse.
/// Fails with [`GenInvError::ReverseOrderLawFails`] when the product is not
/// an outer inverse of `T₁T₂`.
pub fn product_implicit<F: Field>(
    t1: &Matrix<F>,
    t2: &Matrix<F>,
    scr_b1: &DualSubspace<F>,
    e1: &Subspace<F>,
    scr_b2: &DualSubspace<F>,
    e2: &Subspace<F>,
) -> Result<ImplicitProduct<F>, GenInvError> {
    let b1 = scr_b1.orthogonal();
    let report = rol_outer_check(t1, t2, &b1, e1, &scr_b2.orthogonal(), e2)?;
    if !report.verdict {
        return Err(GenInvError::ReverseOrderLawFails {
            failed: report.conditions.failed(),
        });
    }
    let pulled = scr_b1.intersect(&e2.orthogonal())?.transpose_image(t2)?;
    if !scr_b2.is_direct(&pulled)? {
        return Err(GenInvError::NotDirect("𝓑₂ ⊕ (𝓑₁ ∩ E₂⊥)T₂"));
    }
    let pushed = b1.intersect(e2)?.image(t1)?;
    if !e1.is_direct(&pushed)? {
        return Err(GenInvError::NotDirect("E₁ ⊕ T₁(B₁ ∩ E₂)"));
    }
    Ok(ImplicitProduct {
        operator: t1.dot(t2),
        dual_image: scr_b2.sum(&pulled)?,
        kernel: e1.sum(&pushed)?,
    })
}
