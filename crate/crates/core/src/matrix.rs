//! Dense matrices over an exact field with row reduction based kernels.

use std::fmt;

use thiserror::Error;

use crate::scalar::{Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("matrix is singular")]
    Singular,
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type QMatrix = Matrix<Rational>;

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`Matrix::from_rows`] but fixes the column count, which matters
    /// for matrices with no rows.
    pub fn from_rows_with_cols(rows: Vec<Vec<F>>, cols: usize) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(MatrixError::Ragged {
                    row: i,
                    found: r.len(),
                    expected: cols,
                });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
                .collect(),
        )
        .expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Product of shape-compatible matrices; panics on mismatch.
    pub fn dot(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("matrix shapes must agree")
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "vector of length {} for {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(F::zero(), |acc, j| acc.add(&self.get(i, j).mul(&v[j])))
            })
            .collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Result<Self, MatrixError> {
        if self.shape() != rhs.shape() {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip_with(rhs, F::add)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip_with(rhs, F::sub)
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul(s)).collect(),
        }
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Reduced row echelon form. Pivot search takes the first nonzero entry
    /// in column order.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&factor.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : Mx = 0}`, canonicalised as the nonzero rows of the RREF
    /// of the stacked basis vectors.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vec<F>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = reduced.get(r, f).neg();
                }
                v
            })
            .collect();
        canonical_basis(self.cols, &raw)
    }

    /// Canonical basis of the column span.
    pub fn colspace(&self) -> Vec<Vec<F>> {
        canonical_basis(self.rows, &self.columns())
    }

    /// Particular solution of `Mx = b` with zeros in all non-pivot
    /// coordinates, or `Ok(None)` when `b` is outside the column span.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>, MatrixError> {
        if b.len() != self.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]))?;
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solves `MX = B` column by column.
    pub fn solve_matrix(&self, rhs: &Self) -> Result<Option<Self>, MatrixError> {
        let mut cols = Vec::with_capacity(rhs.cols);
        for c in rhs.columns() {
            match self.solve(&c)? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_columns(self.cols, &cols)))
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch(format!(
                "inverse of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let Rref { reduced, rank, .. } = self.hstack(&Self::identity(n))?.rref();
        if (0..n).any(|i| !reduced.get(i, i).is_one()) || rank < n {
            return Err(MatrixError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, reduced.get(i, n + j).clone());
            }
        }
        if !self.dot(&inv).is_identity() {
            return Err(MatrixError::Singular);
        }
        Ok(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && self.dot(self) == *self
    }
}

/// Nonzero rows of the RREF of the given vectors stacked as rows.
pub fn canonical_basis<F: Field>(dim: usize, vectors: &[Vec<F>]) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows_with_cols(vectors.to_vec(), dim).expect("vector length mismatch");
    let Rref { reduced, rank, .. } = m.rref();
    (0..rank).map(|i| reduced.row(i)).collect()
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// `Σ cᵢ vᵢ` for vectors of length `dim`.
pub fn combine<F: Field>(dim: usize, coeffs: &[F], vectors: &[Vec<F>]) -> Vec<F> {
    let mut out = vec![F::zero(); dim];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = o.add(&c.mul(x));
        }
    }
    out
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}
