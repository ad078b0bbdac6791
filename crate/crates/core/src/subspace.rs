//! Subspaces of Fⁿ and of its dual (row covectors), the orthogonal Galois
//! connection between them, and evaluation-matrix intersections.
//!
//! Both kinds store the nonzero rows of the RREF of a spanning set, so two
//! subspaces are equal exactly when their stored bases are equal.

use thiserror::Error;

use crate::matrix::{canonical_basis, combine, dot, Matrix};
use crate::scalar::{Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector of length {found} in ambient space of dimension {expected}")]
    VectorLength { found: usize, expected: usize },
    #[error("map of shape {rows}x{cols} does not act on dimension {dim}")]
    MapShape { rows: usize, cols: usize, dim: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
struct Span<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Span<F> {
    fn new(ambient: usize, vectors: &[Vec<F>]) -> Result<Self, SubspaceError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(SubspaceError::VectorLength {
                found: v.len(),
                expected: ambient,
            });
        }
        Ok(Span {
            ambient,
            basis: canonical_basis(ambient, vectors),
        })
    }

    fn zero(ambient: usize) -> Self {
        Span {
            ambient,
            basis: Vec::new(),
        }
    }

    fn full(ambient: usize) -> Self {
        Span {
            ambient,
            basis: Matrix::<F>::identity(ambient).to_rows(),
        }
    }

    fn check(&self, other: &Self) -> Result<(), SubspaceError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(SubspaceError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            })
        }
    }

    fn sum(&self, other: &Self) -> Result<Self, SubspaceError> {
        self.check(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Span::new(self.ambient, &all)
    }

    /// Annihilator: the vectors pairing to zero with every basis vector.
    fn annihilator(&self) -> Self {
        let m = Matrix::from_rows_with_cols(self.basis.clone(), self.ambient)
            .expect("canonical basis rows have ambient length");
        Span {
            ambient: self.ambient,
            basis: m.nullspace(),
        }
    }

    fn intersect(&self, other: &Self) -> Result<Self, SubspaceError> {
        self.check(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    fn contains(&self, v: &[F]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        if v.iter().all(F::is_zero) {
            return true;
        }
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        canonical_basis(self.ambient, &all).len() == self.basis.len()
    }

    fn includes(&self, other: &Self) -> Result<bool, SubspaceError> {
        self.check(other)?;
        Ok(other.basis.iter().all(|v| self.contains(v)))
    }

    fn is_direct(&self, other: &Self) -> Result<bool, SubspaceError> {
        self.check(other)?;
        Ok(self.sum(other)?.basis.len() == self.basis.len() + other.basis.len())
    }

    fn complement(&self) -> Self {
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero basis row"))
            .collect();
        let vectors: Vec<Vec<F>> = (0..self.ambient)
            .filter(|c| !pivots.contains(c))
            .map(|c| unit(self.ambient, c))
            .collect();
        Span {
            ambient: self.ambient,
            basis: canonical_basis(self.ambient, &vectors),
        }
    }

    fn complement_within(&self, sup: &Self) -> Result<Self, SubspaceError> {
        self.check(sup)?;
        let mut acc = self.clone();
        let mut chosen = Vec::new();
        for v in &sup.basis {
            if !acc.contains(v) {
                chosen.push(v.clone());
                acc = Span::new(self.ambient, &[acc.basis.clone(), vec![v.clone()]].concat())?;
            }
        }
        Span::new(self.ambient, &chosen)
    }
}

pub fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

macro_rules! span_api {
    ($name:ident, $open:literal, $close:literal, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, Debug, Hash)]
        pub struct $name<F = Rational>(Span<F>);

        impl<F: Field> $name<F> {
            /// Canonical span of the given vectors.
            pub fn new(ambient_dim: usize, vectors: &[Vec<F>]) -> Result<Self, SubspaceError> {
                Span::new(ambient_dim, vectors).map(Self)
            }

            pub fn from_i64(ambient_dim: usize, vectors: &[&[i64]]) -> Self {
                let vs: Vec<Vec<F>> = vectors
                    .iter()
                    .map(|v| v.iter().map(|&x| F::from_i64(x)).collect())
                    .collect();
                Self::new(ambient_dim, &vs).expect("literal vectors must match ambient dimension")
            }

            pub fn zero(ambient_dim: usize) -> Self {
                Self(Span::zero(ambient_dim))
            }

            pub fn full(ambient_dim: usize) -> Self {
                Self(Span::full(ambient_dim))
            }

            pub fn ambient_dim(&self) -> usize {
                self.0.ambient
            }

            pub fn dim(&self) -> usize {
                self.0.basis.len()
            }

            pub fn basis(&self) -> &[Vec<F>] {
                &self.0.basis
            }

            pub fn is_zero(&self) -> bool {
                self.0.basis.is_empty()
            }

            pub fn is_full(&self) -> bool {
                self.dim() == self.ambient_dim()
            }

            pub fn sum(&self, other: &Self) -> Result<Self, SubspaceError> {
                self.0.sum(&other.0).map(Self)
            }

            pub fn intersect(&self, other: &Self) -> Result<Self, SubspaceError> {
                self.0.intersect(&other.0).map(Self)
            }

            /// `other ≤ self`.
            pub fn includes(&self, other: &Self) -> Result<bool, SubspaceError> {
                self.0.includes(&other.0)
            }

            pub fn equal(&self, other: &Self) -> Result<bool, SubspaceError> {
                self.0.check(&other.0)?;
                Ok(self == other)
            }

            /// `self ∩ other = {0}`.
            pub fn is_direct(&self, other: &Self) -> Result<bool, SubspaceError> {
                self.0.is_direct(&other.0)
            }

            /// `self ⊕ other` is the whole ambient space.
            pub fn is_complement(&self, other: &Self) -> Result<bool, SubspaceError> {
                Ok(self.is_direct(other)? && self.dim() + other.dim() == self.ambient_dim())
            }

            pub fn contains(&self, v: &[F]) -> bool {
                self.0.contains(v)
            }

            /// Standard basis vectors at the non-pivot coordinates of the
            /// canonical basis.
            pub fn complement(&self) -> Self {
                Self(self.0.complement())
            }

            /// A `W` with `self ⊕ W = sup`, built greedily from `sup`'s basis.
            /// Requires `self ≤ sup`.
            pub fn complement_within(&self, sup: &Self) -> Result<Self, SubspaceError> {
                self.0.complement_within(&sup.0).map(Self)
            }

            /// Basis vectors as the columns of an `ambient × dim` matrix.
            pub fn basis_matrix(&self) -> Matrix<F> {
                Matrix::from_columns(self.ambient_dim(), self.basis())
            }

            /// Basis vectors as the rows of a `dim × ambient` matrix.
            pub fn basis_rows(&self) -> Matrix<F> {
                Matrix::from_rows_with_cols(self.basis().to_vec(), self.ambient_dim())
                    .expect("canonical rows")
            }

            pub fn sum_all<'a>(ambient_dim: usize, parts: impl IntoIterator<Item = &'a Self>) -> Result<Self, SubspaceError> {
                parts
                    .into_iter()
                    .try_fold(Self::zero(ambient_dim), |acc, p| acc.sum(p))
            }

            pub fn intersect_all<'a>(ambient_dim: usize, parts: impl IntoIterator<Item = &'a Self>) -> Result<Self, SubspaceError> {
                parts
                    .into_iter()
                    .try_fold(Self::full(ambient_dim), |acc, p| acc.intersect(p))
            }
        }

        /// `span{(1, 0), (0, 1)}`; covectors use square brackets.
        impl<F: Field> std::fmt::Display for $name<F> {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "span{{")?;
                for (i, v) in self.basis().iter().enumerate() {
                    let entries: Vec<String> = v.iter().map(ToString::to_string).collect();
                    let sep = if i == 0 { "" } else { ", " };
                    write!(f, "{sep}{}{}{}", $open, entries.join(", "), $close)?;
                }
                write!(f, "}}")
            }
        }
    };
}

span_api!(Subspace, "(", ")", "Subspace of Fⁿ spanned by column vectors.");
span_api!(
    DualSubspace,
    "[",
    "]",
    "Subspace of the dual (Fⁿ)* spanned by row covectors. Every such subspace is finite-dimensional and therefore orthogonally closed."
);

impl<F: Field> Subspace<F> {
    /// `{β : β(u) = 0 for all u ∈ self}`.
    pub fn orthogonal(&self) -> DualSubspace<F> {
        DualSubspace(self.0.annihilator())
    }

    pub fn kernel_of(t: &Matrix<F>) -> Self {
        Subspace(Span {
            ambient: t.cols(),
            basis: t.nullspace(),
        })
    }

    pub fn image_of(t: &Matrix<F>) -> Self {
        Subspace(Span {
            ambient: t.rows(),
            basis: t.colspace(),
        })
    }

    /// `T(self)` for `T : F^cols → F^rows`.
    pub fn image(&self, t: &Matrix<F>) -> Result<Self, SubspaceError> {
        check_map(t, t.cols(), self.ambient_dim())?;
        Ok(Self::image_of(&t.dot(&self.basis_matrix())))
    }

    /// `T⁻¹(self)` for `T : F^cols → F^rows`, where `self ≤ F^rows`.
    pub fn preimage(&self, t: &Matrix<F>) -> Result<Self, SubspaceError> {
        check_map(t, t.rows(), self.ambient_dim())?;
        let constraints = self.orthogonal().basis_rows();
        Ok(Self::kernel_of(&constraints.dot(t)))
    }
}

impl<F: Field> DualSubspace<F> {
    /// `{v : β(v) = 0 for all β ∈ self}`.
    pub fn orthogonal(&self) -> Subspace<F> {
        Subspace(self.0.annihilator())
    }

    /// `T*(self) = {β ∘ T}` for `T : F^cols → F^rows`, where `self ≤ (F^rows)*`.
    pub fn transpose_image(&self, t: &Matrix<F>) -> Result<Self, SubspaceError> {
        check_map(t, t.rows(), self.ambient_dim())?;
        let rows = self.basis_rows().dot(t).to_rows();
        DualSubspace::new(t.cols(), &rows)
    }

    /// `(T*)⁻¹(self) = {γ : γ ∘ T ∈ self}` for `T : F^cols → F^rows`, where
    /// `self ≤ (F^cols)*`.
    pub fn transpose_preimage(&self, t: &Matrix<F>) -> Result<Self, SubspaceError> {
        check_map(t, t.cols(), self.ambient_dim())?;
        // γT ∈ 𝓑 ⇔ γT annihilates 𝓑⊥ ⇔ γ ∈ Ker((T·𝓑⊥)ᵀ)
        let closed = self.orthogonal().basis_matrix();
        let tb = t.dot(&closed);
        Ok(DualSubspace(Span {
            ambient: t.rows(),
            basis: tb.transpose().nullspace(),
        }))
    }
}

fn check_map<F: Field>(t: &Matrix<F>, side: usize, dim: usize) -> Result<(), SubspaceError> {
    if side == dim {
        Ok(())
    } else {
        Err(SubspaceError::MapShape {
            rows: t.rows(),
            cols: t.cols(),
            dim,
        })
    }
}

/// Matrix with entry `(i, j) = βᵢ(uⱼ)`.
pub fn eval_matrix<F: Field>(beta: &[Vec<F>], u: &[Vec<F>]) -> Result<Matrix<F>, SubspaceError> {
    let dims = beta.iter().chain(u).map(Vec::len).collect::<Vec<_>>();
    if let Some(w) = dims.windows(2).find(|w| w[0] != w[1]) {
        return Err(SubspaceError::AmbientMismatch {
            left: w[0],
            right: w[1],
        });
    }
    let mut m = Matrix::zeros(beta.len(), u.len());
    for (i, b) in beta.iter().enumerate() {
        for (j, v) in u.iter().enumerate() {
            m.set(i, j, dot(b, v));
        }
    }
    Ok(m)
}

/// Coefficient vectors `k` with `Σ kⱼ uⱼ ∈ 𝓑⊥` and `κ` with `Σ κᵢ βᵢ ∈ U⊥`,
/// computed from the evaluation matrix only. Works for any pairing once the
/// evaluation matrix is known.
pub fn intersection_coefficients<F: Field>(evaluation: &Matrix<F>) -> (Vec<Vec<F>>, Vec<Vec<F>>) {
    (evaluation.nullspace(), evaluation.transpose().nullspace())
}

/// Given generators `u` of `U` and `β` of `𝓑`, returns `(U ∩ 𝓑⊥, U⊥ ∩ 𝓑)`.
pub fn lemma_intersections<F: Field>(
    ambient_dim: usize,
    beta: &[Vec<F>],
    u: &[Vec<F>],
) -> Result<(Subspace<F>, DualSubspace<F>), SubspaceError> {
    for v in beta.iter().chain(u) {
        if v.len() != ambient_dim {
            return Err(SubspaceError::VectorLength {
                found: v.len(),
                expected: ambient_dim,
            });
        }
    }
    let m = eval_matrix(beta, u)?;
    let (k, kappa) = intersection_coefficients(&m);
    let prim: Vec<Vec<F>> = k.iter().map(|c| combine(ambient_dim, c, u)).collect();
    let dual: Vec<Vec<F>> = kappa.iter().map(|c| combine(ambient_dim, c, beta)).collect();
    Ok((
        Subspace::new(ambient_dim, &prim)?,
        DualSubspace::new(ambient_dim, &dual)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::QMatrix;

    type S = Subspace<Rational>;
    type D = DualSubspace<Rational>;

    fn ker_t1() -> S {
        S::from_i64(4, &[&[0, 1, 0, 1], &[0, 0, 1, 1]])
    }
    fn im_t2() -> S {
        S::from_i64(4, &[&[1, 0, -2, -2], &[0, 1, 1, 1]])
    }
    fn b1() -> S {
        S::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])
    }
    fn e2() -> S {
        S::from_i64(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]])
    }

    #[test]
    fn sums() {
        let u = ker_t1();
        assert_eq!(u.sum(&S::zero(4)).unwrap(), u);
        let e1 = S::from_i64(4, &[&[1, 0, 0, 0]]);
        let e2v = S::from_i64(4, &[&[0, 1, 0, 0]]);
        assert_eq!(e1.sum(&e2v).unwrap(), b1());
        assert!(ker_t1().sum(&im_t2()).unwrap().is_full());
        assert!(matches!(
            u.sum(&S::zero(3)),
            Err(SubspaceError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn intersections() {
        assert!(e2().intersect(&ker_t1()).unwrap().is_zero());
        assert_eq!(
            e2().intersect(&b1()).unwrap(),
            S::from_i64(4, &[&[1, 0, 0, 0]])
        );
        let u = im_t2();
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn predicates() {
        assert!(ker_t1().includes(&S::zero(4)).unwrap());
        assert!(ker_t1().is_direct(&b1()).unwrap());
        assert!(ker_t1().is_complement(&b1()).unwrap());
        let big = S::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1]]);
        assert!(big.includes(&b1()).unwrap());
        assert!(!b1().includes(&big).unwrap());
        assert!(big.equal(&big.clone()).unwrap());
    }

    #[test]
    fn orthogonals() {
        assert_eq!(b1().orthogonal(), D::from_i64(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
        assert_eq!(e2().orthogonal(), D::from_i64(4, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]));
        assert!(S::full(3).orthogonal().is_zero());
        assert!(S::zero(3).orthogonal().is_full());
        let u = ker_t1();
        assert_eq!(u.orthogonal().orthogonal(), u);
    }

    #[test]
    fn complements() {
        assert!(S::zero(3).complement().is_full());
        let k = ker_t1();
        assert!(k.is_complement(&k.complement()).unwrap());
        let e1 = S::from_i64(2, &[&[1, 0]]);
        assert_eq!(e1.complement(), S::from_i64(2, &[&[0, 1]]));
    }

    #[test]
    fn complement_within_sup() {
        let c = S::from_i64(4, &[&[1, 0, 0, 0]]);
        let sup = S::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]]);
        let w = c.complement_within(&sup).unwrap();
        assert!(c.is_direct(&w).unwrap());
        assert_eq!(c.sum(&w).unwrap(), sup);
    }

    #[test]
    fn evaluation_matrices() {
        let id = QMatrix::identity(3).to_rows();
        assert!(eval_matrix(&id, &id).unwrap().is_identity());
        let m = eval_matrix(e2().orthogonal().basis(), b1().basis()).unwrap();
        assert_eq!(m, QMatrix::from_i64(&[&[0, 1], &[0, 0]]));
        let m = eval_matrix::<Rational>(&[], b1().basis()).unwrap();
        assert_eq!(m.shape(), (0, 2));
    }

    #[test]
    fn lemma_on_matrix_data() {
        let beta = e2().orthogonal();
        let (prim, _) = lemma_intersections(4, beta.basis(), b1().basis()).unwrap();
        assert_eq!(prim, S::from_i64(4, &[&[1, 0, 0, 0]]));

        let scr_b1 = b1().orthogonal();
        let (_, dual) = lemma_intersections(4, scr_b1.basis(), e2().basis()).unwrap();
        assert_eq!(dual, D::from_i64(4, &[&[0, 0, 0, 1]]));

        let id = QMatrix::identity(2).to_rows();
        let (p, d) = lemma_intersections(2, &id, &id).unwrap();
        assert!(p.is_zero() && d.is_zero());
    }

    #[test]
    fn images_and_preimages() {
        let t1 = QMatrix::from_i64(&[&[1, -1, -1, 1], &[0, 2, 2, -2], &[3, 1, 1, -1]]);
        assert_eq!(S::zero(3).preimage(&t1).unwrap(), ker_t1());
        assert_eq!(S::full(4).image(&t1).unwrap(), S::image_of(&t1));
        let e1 = Subspace::from_i64(3, &[&[0, 0, 1]]);
        assert_eq!(e1.preimage(&t1).unwrap(), ker_t1());
    }
}
