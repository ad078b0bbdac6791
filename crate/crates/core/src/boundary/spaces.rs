use std::collections::BTreeSet;
use std::fmt;

use crate::expcalc::{BoundaryFunctional, ExpPoly, FunctionalKey};
use crate::geninv::FiniteDuality;
use crate::matrix::Matrix;
use crate::scalar::{Field, RatFuncE};

use super::BoundaryError;

/// Objects with finitely many nonzero coordinates over ℚ(e).
pub trait Coordinates: Clone {
    type Key: Ord + Copy;
    fn coord_keys(&self) -> Vec<Self::Key>;
    fn coord(&self, key: &Self::Key) -> RatFuncE;
    fn from_coords(keys: &[Self::Key], coords: &[RatFuncE]) -> Self;
}

impl Coordinates for ExpPoly {
    type Key = (i64, u32);
    fn coord_keys(&self) -> Vec<(i64, u32)> {
        self.keys().collect()
    }
    fn coord(&self, &(a, k): &(i64, u32)) -> RatFuncE {
        self.coeff(a, k)
    }
    fn from_coords(keys: &[(i64, u32)], coords: &[RatFuncE]) -> Self {
        ExpPoly::from_terms(keys.iter().copied().zip(coords.iter().cloned()))
    }
}

impl Coordinates for BoundaryFunctional {
    type Key = FunctionalKey;
    fn coord_keys(&self) -> Vec<FunctionalKey> {
        self.keys().collect()
    }
    fn coord(&self, key: &FunctionalKey) -> RatFuncE {
        self.coordinate(key)
    }
    fn from_coords(keys: &[FunctionalKey], coords: &[RatFuncE]) -> Self {
        BoundaryFunctional::from_coordinates(keys, coords)
    }
}

/// Finite-dimensional span stored as the reduced row echelon form of its
/// coordinate vectors, so equal spans have equal bases.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSpan<T> {
    basis: Vec<T>,
}

/// Span of exponential polynomials.
pub type FnSpan = FiniteSpan<ExpPoly>;
/// Span of boundary functionals.
pub type FunctionalSpan = FiniteSpan<BoundaryFunctional>;

fn key_union<T: Coordinates>(items: &[&T]) -> Vec<T::Key> {
    let set: BTreeSet<T::Key> = items.iter().flat_map(|t| t.coord_keys()).collect();
    set.into_iter().collect()
}

fn coord_rows<T: Coordinates>(items: &[&T], keys: &[T::Key]) -> Matrix<RatFuncE> {
    let rows = items
        .iter()
        .map(|t| keys.iter().map(|k| t.coord(k)).collect())
        .collect::<Vec<Vec<_>>>();
    Matrix::from_rows_with_cols(rows, keys.len()).expect("rows share the key list")
}

fn combine<T: Coordinates>(coeffs: &[RatFuncE], items: &[T]) -> T {
    let refs: Vec<&T> = items.iter().collect();
    let keys = key_union(&refs);
    let mut acc = vec![RatFuncE::zero(); keys.len()];
    for (c, t) in coeffs.iter().zip(items) {
        if c.is_zero() {
            continue;
        }
        for (slot, k) in acc.iter_mut().zip(&keys) {
            *slot = slot.add(&c.mul(&t.coord(k)));
        }
    }
    T::from_coords(&keys, &acc)
}

impl<T: Coordinates> FiniteSpan<T> {
    pub fn new(items: Vec<T>) -> Self {
        let refs: Vec<&T> = items.iter().collect();
        let keys = key_union(&refs);
        let r = coord_rows(&refs, &keys).rref();
        let basis = (0..r.rank)
            .map(|i| T::from_coords(&keys, &r.reduced.row(i)))
            .collect();
        FiniteSpan { basis }
    }

    pub fn zero() -> Self {
        FiniteSpan { basis: Vec::new() }
    }

    pub fn basis(&self) -> &[T] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::new(all)
    }

    /// Solves `Σ cᵢ aᵢ = Σ dⱼ bⱼ` on coordinates.
    pub fn intersect(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let refs: Vec<&T> = self.basis.iter().chain(&other.basis).collect();
        let keys = key_union(&refs);
        let a = coord_rows(&self.basis.iter().collect::<Vec<_>>(), &keys);
        let b = coord_rows(&other.basis.iter().collect::<Vec<_>>(), &keys).scale(&RatFuncE::from(-1));
        let stacked = a.transpose().hstack(&b.transpose()).expect("same key rows");
        let common = stacked
            .nullspace()
            .iter()
            .map(|v| combine(&v[..self.dim()], &self.basis))
            .collect();
        Self::new(common)
    }

    /// `other ≤ self`.
    pub fn includes(&self, other: &Self) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn contains(&self, item: &T) -> bool {
        self.includes(&Self::new(vec![item.clone()]))
    }

    /// Whether the given list is linearly independent.
    pub fn independent(items: &[T]) -> bool {
        Self::new(items.to_vec()).dim() == items.len()
    }

    pub fn combine(&self, coeffs: &[RatFuncE]) -> T {
        combine(coeffs, &self.basis)
    }
}

impl<T: Coordinates + fmt::Display> fmt::Display for FiniteSpan<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

impl<T: Coordinates + fmt::Display> fmt::Debug for FiniteSpan<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Functions on `[0, 1]` paired with boundary functionals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FunctionDuality;

impl FiniteDuality for FunctionDuality {
    type Scalar = RatFuncE;
    type Vector = ExpPoly;
    type Covector = BoundaryFunctional;
    type Primal = FnSpan;
    type Dual = FunctionalSpan;
    type Error = BoundaryError;

    fn pair(&self, beta: &BoundaryFunctional, u: &ExpPoly) -> RatFuncE {
        beta.apply(u)
    }
    fn primal_basis(&self, u: &FnSpan) -> Vec<ExpPoly> {
        u.basis().to_vec()
    }
    fn dual_basis(&self, b: &FunctionalSpan) -> Vec<BoundaryFunctional> {
        b.basis().to_vec()
    }
    fn primal_span(&self, vs: Vec<ExpPoly>) -> Result<FnSpan, BoundaryError> {
        Ok(FnSpan::new(vs))
    }
    fn dual_span(&self, bs: Vec<BoundaryFunctional>) -> Result<FunctionalSpan, BoundaryError> {
        Ok(FunctionalSpan::new(bs))
    }
    fn combine_primal(&self, coeffs: &[RatFuncE], vs: &[ExpPoly]) -> ExpPoly {
        combine(coeffs, vs)
    }
    fn combine_dual(&self, coeffs: &[RatFuncE], bs: &[BoundaryFunctional]) -> BoundaryFunctional {
        combine(coeffs, bs)
    }
    fn primal_intersect(&self, a: &FnSpan, b: &FnSpan) -> Result<FnSpan, BoundaryError> {
        Ok(a.intersect(b))
    }
    fn dual_intersect(&self, a: &FunctionalSpan, b: &FunctionalSpan) -> Result<FunctionalSpan, BoundaryError> {
        Ok(a.intersect(b))
    }
    fn primal_includes(&self, big: &FnSpan, small: &FnSpan) -> Result<bool, BoundaryError> {
        Ok(big.includes(small))
    }
    fn dual_includes(&self, big: &FunctionalSpan, small: &FunctionalSpan) -> Result<bool, BoundaryError> {
        Ok(big.includes(small))
    }
}
