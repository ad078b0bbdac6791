use std::fmt::Debug;

use crate::matrix::Matrix;
use crate::scalar::{Field, Rational};
use crate::subspace::{lemma_intersections, DualSubspace, Subspace, SubspaceError};

use super::conditions::{ConditionWitness, Conditions, RolReport};
use super::GenInvError;

/// Finite-dimensional subspaces on both sides of a dual pair `⟨V*, V⟩`, with
/// the operations needed to decide inclusions that mix a space and the
/// orthogonal of another. `V` itself may be infinite-dimensional.
pub trait FiniteDuality {
    type Scalar: Field;
    type Vector: Clone;
    type Covector: Clone;
    type Primal: Clone + Debug + PartialEq;
    type Dual: Clone + Debug + PartialEq;
    type Error;

    fn pair(&self, beta: &Self::Covector, u: &Self::Vector) -> Self::Scalar;
    fn primal_basis(&self, u: &Self::Primal) -> Vec<Self::Vector>;
    fn dual_basis(&self, b: &Self::Dual) -> Vec<Self::Covector>;
    fn primal_span(&self, vs: Vec<Self::Vector>) -> Result<Self::Primal, Self::Error>;
    fn dual_span(&self, bs: Vec<Self::Covector>) -> Result<Self::Dual, Self::Error>;
    fn combine_primal(&self, coeffs: &[Self::Scalar], vs: &[Self::Vector]) -> Self::Vector;
    fn combine_dual(&self, coeffs: &[Self::Scalar], bs: &[Self::Covector]) -> Self::Covector;

    fn primal_sum(&self, a: &Self::Primal, b: &Self::Primal) -> Result<Self::Primal, Self::Error> {
        let mut vs = self.primal_basis(a);
        vs.extend(self.primal_basis(b));
        self.primal_span(vs)
    }
    fn dual_sum(&self, a: &Self::Dual, b: &Self::Dual) -> Result<Self::Dual, Self::Error> {
        let mut bs = self.dual_basis(a);
        bs.extend(self.dual_basis(b));
        self.dual_span(bs)
    }
    fn primal_intersect(&self, a: &Self::Primal, b: &Self::Primal) -> Result<Self::Primal, Self::Error>;
    fn dual_intersect(&self, a: &Self::Dual, b: &Self::Dual) -> Result<Self::Dual, Self::Error>;

    /// `small ≤ big`.
    fn primal_includes(&self, big: &Self::Primal, small: &Self::Primal) -> Result<bool, Self::Error> {
        Ok(self.primal_sum(big, small)? == *big)
    }
    fn dual_includes(&self, big: &Self::Dual, small: &Self::Dual) -> Result<bool, Self::Error> {
        Ok(self.dual_sum(big, small)? == *big)
    }

    #[allow(clippy::type_complexity)]
    fn evaluation(&self, b: &Self::Dual, u: &Self::Primal) -> (Vec<Self::Covector>, Vec<Self::Vector>, Matrix<Self::Scalar>) {
        let bs = self.dual_basis(b);
        let us = self.primal_basis(u);
        let mut m = Matrix::zeros(bs.len(), us.len());
        for (i, beta) in bs.iter().enumerate() {
            for (j, v) in us.iter().enumerate() {
                m.set(i, j, self.pair(beta, v));
            }
        }
        (bs, us, m)
    }

    /// `U ∩ 𝓑⊥` from the evaluation matrix.
    fn primal_cap_perp(&self, u: &Self::Primal, b: &Self::Dual) -> Result<Self::Primal, Self::Error> {
        let (_, us, m) = self.evaluation(b, u);
        let vs = m.nullspace().iter().map(|k| self.combine_primal(k, &us)).collect();
        self.primal_span(vs)
    }

    /// `𝓑 ∩ U⊥` from the evaluation matrix.
    fn dual_cap_perp(&self, b: &Self::Dual, u: &Self::Primal) -> Result<Self::Dual, Self::Error> {
        let (bs, _, m) = self.evaluation(b, u);
        let cs = m.transpose().nullspace().iter().map(|k| self.combine_dual(k, &bs)).collect();
        self.dual_span(cs)
    }
}

/// `Fⁿ` paired with row vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandardDuality<F = Rational> {
    pub dim: usize,
    _field: std::marker::PhantomData<F>,
}

impl<F: Field> StandardDuality<F> {
    pub fn new(dim: usize) -> Self {
        StandardDuality {
            dim,
            _field: std::marker::PhantomData,
        }
    }
}

impl<F: Field> FiniteDuality for StandardDuality<F> {
    type Scalar = F;
    type Vector = Vec<F>;
    type Covector = Vec<F>;
    type Primal = Subspace<F>;
    type Dual = DualSubspace<F>;
    type Error = SubspaceError;

    fn pair(&self, beta: &Vec<F>, u: &Vec<F>) -> F {
        crate::matrix::dot(beta, u)
    }
    fn primal_basis(&self, u: &Subspace<F>) -> Vec<Vec<F>> {
        u.basis().to_vec()
    }
    fn dual_basis(&self, b: &DualSubspace<F>) -> Vec<Vec<F>> {
        b.basis().to_vec()
    }
    fn primal_span(&self, vs: Vec<Vec<F>>) -> Result<Subspace<F>, SubspaceError> {
        Subspace::new(self.dim, &vs)
    }
    fn dual_span(&self, bs: Vec<Vec<F>>) -> Result<DualSubspace<F>, SubspaceError> {
        DualSubspace::new(self.dim, &bs)
    }
    fn combine_primal(&self, coeffs: &[F], vs: &[Vec<F>]) -> Vec<F> {
        crate::matrix::combine(self.dim, coeffs, vs)
    }
    fn combine_dual(&self, coeffs: &[F], bs: &[Vec<F>]) -> Vec<F> {
        crate::matrix::combine(self.dim, coeffs, bs)
    }
    fn primal_intersect(&self, a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>, SubspaceError> {
        a.intersect(b)
    }
    fn dual_intersect(&self, a: &DualSubspace<F>, b: &DualSubspace<F>) -> Result<DualSubspace<F>, SubspaceError> {
        a.intersect(b)
    }
    fn primal_includes(&self, big: &Subspace<F>, small: &Subspace<F>) -> Result<bool, SubspaceError> {
        big.includes(small)
    }
    fn dual_includes(&self, big: &DualSubspace<F>, small: &DualSubspace<F>) -> Result<bool, SubspaceError> {
        big.includes(small)
    }
    fn primal_cap_perp(&self, u: &Subspace<F>, b: &DualSubspace<F>) -> Result<Subspace<F>, SubspaceError> {
        Ok(lemma_intersections(self.dim, b.basis(), u.basis())?.0)
    }
    fn dual_cap_perp(&self, b: &DualSubspace<F>, u: &Subspace<F>) -> Result<DualSubspace<F>, SubspaceError> {
        Ok(lemma_intersections(self.dim, b.basis(), u.basis())?.1)
    }
}

/// Witness space on either side of a [`FiniteDuality`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualityWitness<V, C> {
    Primal(V),
    Dual(C),
}

impl<V: std::fmt::Display, C: std::fmt::Display> std::fmt::Display for DualityWitness<V, C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DualityWitness::Primal(v) => write!(f, "{v}"),
            DualityWitness::Dual(c) => write!(f, "{c}"),
        }
    }
}

pub type CorWitnesses<D> =
    Vec<ConditionWitness<DualityWitness<<D as FiniteDuality>::Primal, <D as FiniteDuality>::Dual>>>;

/// Conditions (ii)-(v) for `G₂G₁` to be an outer inverse of `T₁T₂` when the
/// defining image `B₁` is cut out by finitely many functionals `𝓑₁`.
///
/// `c2` is the annihilator of `T₂(B₂)`, `k1 = T₁⁻¹(E₁)`; both finite-dimensional.
pub fn cor_outer_conditions<D: FiniteDuality>(
    d: &D,
    c2: &D::Dual,
    k1: &D::Primal,
    scr_b1: &D::Dual,
    e2: &D::Primal,
) -> Result<(Conditions, CorWitnesses<D>), D::Error> {
    use DualityWitness::{Dual, Primal};

    let a = d.dual_cap_perp(scr_b1, e2)?;
    let x = d.primal_intersect(e2, k1)?;
    let y = d.primal_cap_perp(e2, scr_b1)?;
    let z = d.dual_intersect(scr_b1, c2)?;

    let l2 = d.dual_cap_perp(scr_b1, &x)?;
    let g2 = d.dual_sum(c2, &a)?;
    let ii = d.dual_includes(&g2, &l2)?;

    let l3 = d.dual_cap_perp(c2, &d.primal_sum(&y, &x)?)?;
    let iii = d.dual_includes(scr_b1, &l3)?;

    let l4 = d.primal_cap_perp(e2, &z)?;
    let g4 = d.primal_sum(k1, &y)?;
    let iv = d.primal_includes(&g4, &l4)?;

    let l5 = d.primal_cap_perp(k1, &d.dual_sum(&a, &z)?)?;
    let v = d.primal_includes(e2, &l5)?;

    let witness = |label, lesser, greater| ConditionWitness { label, lesser, greater };
    Ok((
        Conditions { i: None, ii, iii, iv, v },
        vec![
            witness("ii", Dual(l2), Dual(g2)),
            witness("iii", Dual(l3), Dual(scr_b1.clone())),
            witness("iv", Primal(l4), Primal(g4)),
            witness("v", Primal(l5), Primal(e2.clone())),
        ],
    ))
}

pub type DualRolReport<F> = RolReport<DualityWitness<Subspace<F>, DualSubspace<F>>>;

/// Matrix form of [`cor_outer_conditions`]. Statement (i) is left unevaluated
/// because the operators themselves are not supplied.
pub fn fredholm_rol_outer_check<F: Field>(
    c2: &DualSubspace<F>,
    k1: &Subspace<F>,
    scr_b1: &DualSubspace<F>,
    e2: &Subspace<F>,
    b1: &Subspace<F>,
) -> Result<DualRolReport<F>, GenInvError> {
    let n = b1.ambient_dim();
    for dim in [c2.ambient_dim(), k1.ambient_dim(), scr_b1.ambient_dim(), e2.ambient_dim()] {
        if dim != n {
            return Err(SubspaceError::AmbientMismatch { left: n, right: dim }.into());
        }
    }
    if scr_b1.orthogonal() != *b1 {
        return Err(GenInvError::Inconsistent("B₁ is not the orthogonal of 𝓑₁"));
    }
    let (conditions, witnesses) = cor_outer_conditions(&StandardDuality::new(n), c2, k1, scr_b1, e2)?;
    Ok(RolReport::from_conditions(conditions, witnesses))
}
