use crate::matrix::Matrix;
use crate::scalar::{Field, Rational};
use crate::subspace::{DualSubspace, Subspace, SubspaceError};

use super::projector::projector;
use super::GenInvError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenInvKind {
    Outer,
    Inner,
    Reflexive,
}

/// Prescribed image of a generalized inverse, given directly or through its
/// orthogonal in the dual space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefiningImage<F = Rational> {
    Space(Subspace<F>),
    Orthogonal(DualSubspace<F>),
}

impl<F: Field> DefiningImage<F> {
    pub fn space(&self) -> Subspace<F> {
        match self {
            DefiningImage::Space(b) => b.clone(),
            DefiningImage::Orthogonal(scr) => scr.orthogonal(),
        }
    }

    pub fn orthogonal(&self) -> DualSubspace<F> {
        match self {
            DefiningImage::Space(b) => b.orthogonal(),
            DefiningImage::Orthogonal(scr) => scr.clone(),
        }
    }
}

impl<F: Field> From<Subspace<F>> for DefiningImage<F> {
    fn from(b: Subspace<F>) -> Self {
        DefiningImage::Space(b)
    }
}

impl<F: Field> From<DualSubspace<F>> for DefiningImage<F> {
    fn from(b: DualSubspace<F>) -> Self {
        DefiningImage::Orthogonal(b)
    }
}

/// A generalized inverse of `t` described by its defining spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenInvSpec<F: Field = Rational> {
    pub t: Matrix<F>,
    pub image: DefiningImage<F>,
    pub kernel: Subspace<F>,
    pub kind: GenInvKind,
    /// Values of `G` on the basis of `kernel`; inner kind only.
    pub inner_action: Option<Matrix<F>>,
}

impl<F: Field> GenInvSpec<F> {
    pub fn build(&self) -> Result<Matrix<F>, GenInvError> {
        let b = self.image.space();
        match self.kind {
            GenInvKind::Outer => construct_outer(&self.t, &b, &self.kernel),
            GenInvKind::Inner => construct_inner(&self.t, &b, &self.kernel, self.inner_action.as_ref()),
            GenInvKind::Reflexive => construct_reflexive(&self.t, &b, &self.kernel),
        }
    }
}

fn check_ambient<F: Field>(t: &Matrix<F>, b: &Subspace<F>, e: &Subspace<F>) -> Result<(), GenInvError> {
    if b.ambient_dim() != t.cols() {
        return Err(SubspaceError::AmbientMismatch {
            left: t.cols(),
            right: b.ambient_dim(),
        }
        .into());
    }
    if e.ambient_dim() != t.rows() {
        return Err(SubspaceError::AmbientMismatch {
            left: t.rows(),
            right: e.ambient_dim(),
        }
        .into());
    }
    Ok(())
}

/// For `w ∈ T(B)` columns of `targets`, the unique preimages inside `B`.
fn restricted_inverse<F: Field>(t: &Matrix<F>, b: &Subspace<F>, targets: &Matrix<F>) -> Result<Matrix<F>, GenInvError> {
    let bmat = b.basis_matrix();
    let tb = t.dot(&bmat);
    let coeffs = tb
        .solve_matrix(targets)?
        .ok_or(GenInvError::Inconsistent("target outside T(B)"))?;
    Ok(bmat.dot(&coeffs))
}

/// The outer inverse `G = (T|_B)⁻¹ Q` with image `B` and kernel `E`, where
/// `Q` projects onto `T(B)` along `E`.
pub fn construct_outer<F: Field>(t: &Matrix<F>, b: &Subspace<F>, e: &Subspace<F>) -> Result<Matrix<F>, GenInvError> {
    check_ambient(t, b, e)?;
    if !b.is_direct(&Subspace::kernel_of(t))? {
        return Err(GenInvError::Precondition("B ∩ Ker T ≠ {0}"));
    }
    let tb = b.image(t)?;
    if !e.is_complement(&tb)? {
        return Err(GenInvError::Precondition("W ≠ E ⊕ T(B)"));
    }
    let q = projector(&tb, e)?;
    restricted_inverse(t, b, q.matrix())
}

fn check_inner_sums<F: Field>(t: &Matrix<F>, b: &Subspace<F>, e: &Subspace<F>) -> Result<(), GenInvError> {
    check_ambient(t, b, e)?;
    if !Subspace::kernel_of(t).is_complement(b)? {
        return Err(GenInvError::Precondition("V ≠ Ker T ⊕ B"));
    }
    if !Subspace::image_of(t).is_complement(e)? {
        return Err(GenInvError::Precondition("W ≠ Im T ⊕ E"));
    }
    Ok(())
}

/// Inner inverse equal to `(T|_B)⁻¹` on `Im T` and to `inner_action` on `E`.
/// Column `j` of `inner_action` is the image of the `j`-th canonical basis
/// vector of `E`; omitting it means the zero map, which yields the reflexive
/// inverse.
pub fn construct_inner<F: Field>(
    t: &Matrix<F>,
    b: &Subspace<F>,
    e: &Subspace<F>,
    inner_action: Option<&Matrix<F>>,
) -> Result<Matrix<F>, GenInvError> {
    check_inner_sums(t, b, e)?;
    let (n, m) = (t.cols(), t.rows());
    let action = match inner_action {
        Some(a) if a.shape() != (n, e.dim()) => {
            return Err(GenInvError::ActionShape {
                rows: a.rows(),
                cols: a.cols(),
                expected_rows: n,
                expected_cols: e.dim(),
            })
        }
        Some(a) => a.clone(),
        None => Matrix::zeros(n, e.dim()),
    };
    let im = Subspace::image_of(t);
    let on_image = restricted_inverse(t, b, &im.basis_matrix())?;
    let frame = im.basis_matrix().hstack(&e.basis_matrix())?;
    debug_assert_eq!(frame.shape(), (m, m));
    Ok(on_image.hstack(&action)?.dot(&frame.inverse()?))
}

/// Algebraic generalized inverse with image `B` and kernel `E`.
pub fn construct_reflexive<F: Field>(t: &Matrix<F>, b: &Subspace<F>, e: &Subspace<F>) -> Result<Matrix<F>, GenInvError> {
    construct_inner(t, b, e, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geninv::verify;
    use crate::matrix::QMatrix;
    use crate::scalar::ratio;

    type S = Subspace<Rational>;

    fn t1() -> QMatrix {
        QMatrix::from_i64(&[&[1, -1, -1, 1], &[0, 2, 2, -2], &[3, 1, 1, -1]])
    }
    fn t2() -> QMatrix {
        QMatrix::from_i64(&[&[1, -2, -1], &[1, 1, 2], &[-1, 5, 4], &[-1, 5, 4]])
    }

    #[test]
    fn outer_identity_case() {
        let g = construct_outer(&QMatrix::identity(3), &S::full(3), &S::zero(3)).unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn outer_of_invertible_is_inverse() {
        let t = QMatrix::from_i64(&[&[2, 1], &[5, 3]]);
        let g = construct_outer(&t, &S::full(2), &S::zero(2)).unwrap();
        assert_eq!(g, t.inverse().unwrap());
    }

    #[test]
    fn outer_of_product_matches_printed_matrix() {
        let t = t1().dot(&t2());
        let b = S::from_i64(3, &[&[5, 1, 0]]);
        let e = S::from_i64(3, &[&[1, 0, 0], &[0, 0, 1]]);
        let g = construct_outer(&t, &b, &e).unwrap();
        let z = ratio(0, 1);
        let expected = QMatrix::from_rows(vec![
            vec![z.clone(), ratio(5, 12), z.clone()],
            vec![z.clone(), ratio(1, 12), z.clone()],
            vec![z.clone(), z.clone(), z],
        ])
        .unwrap();
        assert_eq!(g, expected);
        let v = verify(&t, &g).unwrap();
        assert!(v.outer && !v.inner);
    }

    #[test]
    fn outer_preconditions_named() {
        let t = QMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        let err = construct_outer(&t, &S::full(2), &S::zero(2)).unwrap_err();
        assert_eq!(err, GenInvError::Precondition("B ∩ Ker T ≠ {0}"));
        let err = construct_outer(&t, &S::from_i64(2, &[&[1, 0]]), &S::zero(2)).unwrap_err();
        assert_eq!(err, GenInvError::Precondition("W ≠ E ⊕ T(B)"));
    }

    #[test]
    fn inner_identity_ignores_action() {
        let id = QMatrix::identity(2);
        let g = construct_inner(&id, &S::full(2), &S::zero(2), Some(&QMatrix::zeros(2, 0))).unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn reflexive_for_t1() {
        let b1 = S::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let e1 = S::from_i64(3, &[&[0, 0, 1]]);
        let g = construct_reflexive(&t1(), &b1, &e1).unwrap();
        let t = t1();
        assert_eq!(t.dot(&g).dot(&t), t);
        assert_eq!(g.dot(&t).dot(&g), g);
        assert_eq!(S::image_of(&g), b1);
        assert_eq!(S::kernel_of(&g), e1);
    }

    #[test]
    fn inner_with_nonzero_action_is_not_outer() {
        let b1 = S::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let e1 = S::from_i64(3, &[&[0, 0, 1]]);
        let action = QMatrix::from_i64(&[&[1], &[0], &[2], &[0]]);
        let g = construct_inner(&t1(), &b1, &e1, Some(&action)).unwrap();
        let v = verify(&t1(), &g).unwrap();
        assert!(v.inner);
        assert!(!v.outer);
        let bad = QMatrix::zeros(3, 1);
        assert!(matches!(
            construct_inner(&t1(), &b1, &e1, Some(&bad)),
            Err(GenInvError::ActionShape { .. })
        ));
    }

    #[test]
    fn spec_accepts_dual_image() {
        let b = S::from_i64(3, &[&[5, 1, 0]]);
        let spec = GenInvSpec {
            t: t1().dot(&t2()),
            image: DefiningImage::Orthogonal(b.orthogonal()),
            kernel: S::from_i64(3, &[&[1, 0, 0], &[0, 0, 1]]),
            kind: GenInvKind::Outer,
            inner_action: None,
        };
        let g = spec.build().unwrap();
        assert_eq!(S::image_of(&g), b);
    }
}
