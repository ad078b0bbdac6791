use crate::matrix::Matrix;
use crate::scalar::{Field, Rational};
use crate::subspace::Subspace;

use super::conditions::{pq_projector_conditions, ConditionWitness, Conditions};
use super::GenInvError;

/// Idempotent map together with its image and kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projector<F: Field = Rational> {
    image: Subspace<F>,
    kernel: Subspace<F>,
    matrix: Matrix<F>,
}

impl<F: Field> Projector<F> {
    pub fn image(&self) -> &Subspace<F> {
        &self.image
    }

    pub fn kernel(&self) -> &Subspace<F> {
        &self.kernel
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Reads image and kernel off an idempotent matrix.
    pub fn from_matrix(m: Matrix<F>) -> Result<Self, GenInvError> {
        if !m.is_idempotent() {
            return Err(GenInvError::Precondition("matrix is not idempotent"));
        }
        Ok(Projector {
            image: Subspace::image_of(&m),
            kernel: Subspace::kernel_of(&m),
            matrix: m,
        })
    }

    /// `1 - P`.
    pub fn complementary(&self) -> Self {
        let n = self.ambient_dim();
        Projector {
            image: self.kernel.clone(),
            kernel: self.image.clone(),
            matrix: Matrix::identity(n).sub(&self.matrix).expect("square"),
        }
    }

    pub fn transpose(&self) -> Self {
        Projector::from_matrix(self.matrix.transpose()).expect("transpose of a projector is idempotent")
    }
}

/// The unique projector with the given complementary image and kernel.
pub fn projector<F: Field>(image: &Subspace<F>, kernel: &Subspace<F>) -> Result<Projector<F>, GenInvError> {
    if !image.is_complement(kernel)? {
        return Err(GenInvError::Precondition("image and kernel are not complementary"));
    }
    let n = image.ambient_dim();
    let frame = image.basis_matrix().hstack(&kernel.basis_matrix())?;
    let target = image.basis_matrix().hstack(&Matrix::zeros(n, kernel.dim()))?;
    let matrix = target.dot(&frame.inverse()?);
    Ok(Projector {
        image: image.clone(),
        kernel: kernel.clone(),
        matrix,
    })
}

/// Idempotency of `PQ` decided from images and kernels, cross-checked by
/// matrix arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorProductReport<F: Field = Rational> {
    /// Condition (i) is `(PQ)² = PQ`, the others use subspaces only.
    pub conditions: Conditions,
    pub witnesses: Vec<ConditionWitness<Subspace<F>>>,
    pub is_projector: bool,
    /// `Im Q = (Im P ∩ Im Q) ⊕ (Ker P ∩ Im Q)`.
    pub img_cap: bool,
    /// `Ker P = (Ker P ∩ Ker Q) ⊕ (Ker P ∩ Im Q)`.
    pub ker_sum: bool,
    /// Both decompositions characterising `PQ = QP`.
    pub commute: bool,
    /// `PQ = QP` by matrix arithmetic.
    pub commute_direct: bool,
}

pub fn projector_product_classify<F: Field>(
    p: &Projector<F>,
    q: &Projector<F>,
) -> Result<ProjectorProductReport<F>, GenInvError> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(crate::subspace::SubspaceError::AmbientMismatch {
            left: p.ambient_dim(),
            right: q.ambient_dim(),
        }
        .into());
    }
    let pq = p.matrix.dot(&q.matrix);
    let qp = q.matrix.dot(&p.matrix);
    let is_projector = pq.is_idempotent();
    let (mut conditions, witnesses) = pq_projector_conditions(p.image(), p.kernel(), q.image(), q.kernel())?;
    conditions.i = Some(is_projector);

    let (ip, kp, iq, kq) = (p.image(), p.kernel(), q.image(), q.kernel());
    let img_cap = decomposes(iq, &ip.intersect(iq)?, &kp.intersect(iq)?)?;
    let ker_sum = decomposes(kp, &kp.intersect(kq)?, &kp.intersect(iq)?)?;
    let ker_q_split = decomposes(kq, &ip.intersect(kq)?, &kp.intersect(kq)?)?;
    Ok(ProjectorProductReport {
        conditions,
        witnesses,
        is_projector,
        img_cap,
        ker_sum,
        commute: img_cap && ker_q_split,
        commute_direct: pq == qp,
    })
}

/// `whole = a ⊕ b`.
fn decomposes<F: Field>(whole: &Subspace<F>, a: &Subspace<F>, b: &Subspace<F>) -> Result<bool, GenInvError> {
    Ok(a.is_direct(b)? && a.sum(b)? == *whole)
}
