use std::collections::BTreeMap;
use std::fmt;

use crate::matrix::Matrix;
use crate::scalar::{Field, RatFuncE};

use super::diffop::DiffOp;
use super::poly::{write_signed_sum, ExpPoly};
use super::ExpCalcError;

/// `Σ c·E_p Dᵒ + ∫₀¹ w(ξ)·(·)(ξ) dξ` with `p ∈ {0, 1}`. The integral part always
/// acts on the function itself.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BoundaryFunctional {
    evals: BTreeMap<(u8, u32), RatFuncE>,
    weight: ExpPoly,
}

/// Coordinate of a functional: an evaluation key or a term of the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionalKey {
    Eval { point: u8, order: u32 },
    Weight { a: i64, k: u32 },
}

impl FunctionalKey {
    fn rank(&self) -> (u8, u8, i64, i64) {
        match *self {
            // higher derivatives first so reduced bases read like boundary conditions
            FunctionalKey::Eval { point, order } => (0, point, -(order as i64), 0),
            FunctionalKey::Weight { a, k } => (1, 0, a, k as i64),
        }
    }
}

impl PartialOrd for FunctionalKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FunctionalKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

fn check_point(point: i64) -> Result<u8, ExpCalcError> {
    match point {
        0 | 1 => Ok(point as u8),
        _ => Err(ExpCalcError::UnsupportedPoint(point)),
    }
}

impl BoundaryFunctional {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `E_point Dᵒʳᵈᵉʳ`.
    pub fn eval(point: i64, order: u32) -> Result<Self, ExpCalcError> {
        Self::eval_scaled(point, order, RatFuncE::one())
    }

    pub fn eval_scaled(point: i64, order: u32, c: RatFuncE) -> Result<Self, ExpCalcError> {
        let mut b = Self::zero();
        b.add_eval(check_point(point)?, order, c);
        Ok(b)
    }

    /// `f ↦ ∫₀¹ weight·f`.
    pub fn integral(weight: ExpPoly) -> Self {
        BoundaryFunctional {
            evals: BTreeMap::new(),
            weight,
        }
    }

    fn add_eval(&mut self, point: u8, order: u32, c: RatFuncE) {
        if c.is_zero() {
            return;
        }
        let slot = self.evals.entry((point, order)).or_insert_with(RatFuncE::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.evals.remove(&(point, order));
        }
    }

    /// Evaluation terms `(point, order, coefficient)`.
    pub fn eval_terms(&self) -> impl Iterator<Item = (u8, u32, &RatFuncE)> {
        self.evals.iter().map(|(&(p, o), c)| (p, o, c))
    }

    pub fn weight(&self) -> &ExpPoly {
        &self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.evals.is_empty() && self.weight.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(p, o), c) in &rhs.evals {
            out.add_eval(p, o, c.clone());
        }
        out.weight = out.weight.add(&rhs.weight);
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&RatFuncE::from(-1)))
    }

    pub fn scale(&self, s: &RatFuncE) -> Self {
        let mut out = Self::zero();
        for (&(p, o), c) in &self.evals {
            out.add_eval(p, o, c.mul(s));
        }
        out.weight = self.weight.scale(s);
        out
    }

    /// `β(f)`.
    pub fn apply(&self, f: &ExpPoly) -> RatFuncE {
        let mut acc = RatFuncE::zero();
        for (&(p, o), c) in &self.evals {
            let v = f.derivative(o).evaluate(p as i64).expect("points are validated");
            acc = acc.add(&c.mul(&v));
        }
        if !self.weight.is_zero() {
            acc = acc.add(&self.weight.mul(f).integral_01());
        }
        acc
    }

    /// `β ∘ T`, with integrals of derivatives removed by integration by parts.
    pub fn compose_with_diffop(&self, t: &DiffOp) -> Self {
        let mut out = Self::zero();
        for (j, tj) in t.coefficients().iter().enumerate() {
            let tj = RatFuncE::from(tj.clone());
            if tj.is_zero() {
                continue;
            }
            for (&(p, o), c) in &self.evals {
                out.add_eval(p, o + j as u32, c.mul(&tj));
            }
            out = out.add(&self.integral_of_derivative(j as u32).scale(&tj));
        }
        out
    }

    /// `f ↦ ∫₀¹ w·f⁽ʲ⁾` in normalized form:
    /// `Σ_{i<j} (-1)ⁱ [w⁽ⁱ⁾ f⁽ʲ⁻¹⁻ⁱ⁾]₀¹ + (-1)ʲ ∫₀¹ w⁽ʲ⁾ f`.
    fn integral_of_derivative(&self, j: u32) -> Self {
        let mut out = Self::zero();
        if self.weight.is_zero() {
            return out;
        }
        let mut w = self.weight.clone();
        for i in 0..j {
            let sign = RatFuncE::from(if i.is_multiple_of(2) { 1 } else { -1 });
            let m = j - 1 - i;
            out.add_eval(1, m, sign.mul(&w.evaluate(1).expect("point 1")));
            out.add_eval(0, m, sign.neg().mul(&w.evaluate(0).expect("point 0")));
            w = w.differentiate();
        }
        let sign = RatFuncE::from(if j.is_multiple_of(2) { 1 } else { -1 });
        out.weight = w.scale(&sign);
        out
    }

    pub fn keys(&self) -> impl Iterator<Item = FunctionalKey> + '_ {
        self.evals
            .keys()
            .map(|&(point, order)| FunctionalKey::Eval { point, order })
            .chain(self.weight.keys().map(|(a, k)| FunctionalKey::Weight { a, k }))
    }

    pub fn coordinate(&self, key: &FunctionalKey) -> RatFuncE {
        match *key {
            FunctionalKey::Eval { point, order } => {
                self.evals.get(&(point, order)).cloned().unwrap_or_else(RatFuncE::zero)
            }
            FunctionalKey::Weight { a, k } => self.weight.coeff(a, k),
        }
    }

    pub fn from_coordinates(keys: &[FunctionalKey], coords: &[RatFuncE]) -> Self {
        let mut out = Self::zero();
        let mut weight = Vec::new();
        for (key, c) in keys.iter().zip(coords) {
            match *key {
                FunctionalKey::Eval { point, order } => out.add_eval(point, order, c.clone()),
                FunctionalKey::Weight { a, k } => weight.push(((a, k), c.clone())),
            }
        }
        out.weight = ExpPoly::from_terms(weight);
        out
    }
}

/// Entry `(i, j)` is `βᵢ(uⱼ)`.
pub fn eval_matrix_fn(beta: &[BoundaryFunctional], u: &[ExpPoly]) -> Matrix<RatFuncE> {
    let mut m = Matrix::zeros(beta.len(), u.len());
    for (i, b) in beta.iter().enumerate() {
        for (j, f) in u.iter().enumerate() {
            m.set(i, j, b.apply(f));
        }
    }
    m
}

enum Piece<'a> {
    Eval(u8, u32),
    Integral(&'a ExpPoly),
}

impl fmt::Display for BoundaryFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&(u8, u32)> = self.evals.keys().collect();
        keys.sort_by_key(|&&(p, o)| (p, std::cmp::Reverse(o)));
        let mut pieces: Vec<(RatFuncE, Piece)> = keys
            .into_iter()
            .map(|&(p, o)| (self.evals[&(p, o)].clone(), Piece::Eval(p, o)))
            .collect();
        if !self.weight.is_zero() {
            pieces.push((RatFuncE::one(), Piece::Integral(&self.weight)));
        }
        write_signed_sum(
            f,
            &pieces,
            |_| false,
            |f, piece| match piece {
                Piece::Eval(p, 0) => write!(f, "E[{p}]"),
                Piece::Eval(p, 1) => write!(f, "E[{p}]D"),
                Piece::Eval(p, o) => write!(f, "E[{p}]D^{o}"),
                Piece::Integral(w) => write!(f, "int({w})"),
            },
        )
    }
}

impl fmt::Debug for BoundaryFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoundaryFunctional({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn ev(p: i64, o: u32) -> BoundaryFunctional {
        BoundaryFunctional::eval(p, o).unwrap()
    }

    #[test]
    fn applies_evaluations_and_integrals() {
        assert_eq!(ev(1, 1).apply(&ExpPoly::x_pow(2)), RatFuncE::from(2));
        let int1 = BoundaryFunctional::integral(ExpPoly::from_i64(1));
        assert_eq!(int1.apply(&ExpPoly::x()), RatFuncE::from(ratio(1, 2)));
        let c2 = BoundaryFunctional::integral(ExpPoly::exp(-1).add(&ExpPoly::exp(1)));
        assert_eq!(c2.apply(&ExpPoly::from_i64(1)).to_string(), "(e^2-1)/e");
    }

    #[test]
    fn compose_shifts_orders() {
        let t = DiffOp::from_rational_coeffs(&[ratio(-1, 1), ratio(0, 1), ratio(1, 1)]).unwrap();
        let beta = ev(0, 1).sub(&ev(1, 0));
        let expected = ev(0, 3).sub(&ev(0, 1)).sub(&ev(1, 2)).add(&ev(1, 0));
        assert_eq!(beta.compose_with_diffop(&t), expected);
    }

    #[test]
    fn compose_integrates_by_parts() {
        let t = DiffOp::from_rational_coeffs(&[ratio(0, 1), ratio(0, 1), ratio(1, 1)]).unwrap();
        let int1 = BoundaryFunctional::integral(ExpPoly::from_i64(1));
        assert_eq!(int1.compose_with_diffop(&t), ev(1, 1).sub(&ev(0, 1)));
        let id = DiffOp::from_rational_coeffs(&[ratio(1, 1)]);
        assert!(id.is_err());
    }

    #[test]
    fn pairing_survives_composition() {
        let t = DiffOp::from_rational_coeffs(&[ratio(2, 1), ratio(-3, 1), ratio(1, 1)]).unwrap();
        let w = ExpPoly::x().mul(&ExpPoly::exp(-1)).add(&ExpPoly::x_pow(2));
        let beta = BoundaryFunctional::integral(w).add(&ev(1, 2));
        let f = ExpPoly::exp(1).add(&ExpPoly::x_pow(3)).add(&ExpPoly::x().mul(&ExpPoly::exp(-2)));
        assert_eq!(beta.compose_with_diffop(&t).apply(&f), beta.apply(&t.apply(&f)));
    }

    #[test]
    fn evaluation_matrices() {
        let beta = [ev(0, 0), ev(1, 0)];
        let u = [ExpPoly::from_i64(1), ExpPoly::x()];
        let m = eval_matrix_fn(&beta, &u);
        let expected = Matrix::from_rows(vec![
            vec![RatFuncE::from(1), RatFuncE::from(0)],
            vec![RatFuncE::from(1), RatFuncE::from(1)],
        ])
        .unwrap();
        assert_eq!(m, expected);
        assert_eq!(eval_matrix_fn(&[], &[]).shape(), (0, 0));
    }

    #[test]
    fn rejects_other_points() {
        assert_eq!(BoundaryFunctional::eval(2, 1), Err(ExpCalcError::UnsupportedPoint(2)));
    }

    #[test]
    fn display() {
        let beta = ev(0, 3).sub(&ev(1, 2));
        assert_eq!(beta.to_string(), "E[0]D^3 - E[1]D^2");
        let c2 = BoundaryFunctional::integral(ExpPoly::exp(-1).add(&ExpPoly::exp(1)));
        assert_eq!(c2.to_string(), "int(exp(-x) + exp(x))");
        assert_eq!(ev(1, 0).scale(&RatFuncE::from(-2)).to_string(), "-2*E[1]");
        assert_eq!(BoundaryFunctional::zero().to_string(), "0");
    }
}
