use std::fmt;

use crate::expcalc::{eval_matrix_fn, BoundaryFunctional, DiffOp, ExpPoly};
use crate::scalar::{Field, RatFuncE};

use super::spaces::{FnSpan, FunctionalSpan};
use super::BoundaryError;

/// Differential operator together with linearly independent boundary
/// conditions.
#[derive(Clone, PartialEq, Eq)]
pub struct BoundaryProblem {
    operator: DiffOp,
    conditions: Vec<BoundaryFunctional>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    pub semi_regular: bool,
}

impl BoundaryProblem {
    pub fn new(operator: DiffOp, conditions: Vec<BoundaryFunctional>) -> Result<Self, BoundaryError> {
        if !FunctionalSpan::independent(&conditions) {
            return Err(BoundaryError::DependentConditions);
        }
        Ok(BoundaryProblem { operator, conditions })
    }

    pub fn operator(&self) -> &DiffOp {
        &self.operator
    }

    pub fn conditions(&self) -> &[BoundaryFunctional] {
        &self.conditions
    }

    pub fn condition_span(&self) -> FunctionalSpan {
        FunctionalSpan::new(self.conditions.clone())
    }

    /// Semi-regular when no nonzero kernel element satisfies every condition.
    pub fn regularity(&self) -> Regularity {
        let kernel = self.operator.kernel_basis();
        let m = eval_matrix_fn(&self.conditions, &kernel);
        let semi_regular = m.rank() == kernel.len();
        Regularity {
            regular: semi_regular && self.conditions.len() == kernel.len(),
            semi_regular,
        }
    }

    /// A basis of `𝓒 = T(𝓑⊥)⊥`, computed as `G*(𝓑 ∩ (Ker T)⊥)` for the
    /// variation-of-constants right inverse `G`.
    pub fn compatibility(&self) -> Result<FunctionalSpan, BoundaryError> {
        if !self.regularity().semi_regular {
            return Err(BoundaryError::NotSemiRegular);
        }
        let kernel = self.operator.kernel_basis();
        let m = eval_matrix_fn(&self.conditions, &kernel);
        let transported = m
            .transpose()
            .nullspace()
            .iter()
            .map(|k| {
                let gamma = self
                    .conditions
                    .iter()
                    .zip(k)
                    .fold(BoundaryFunctional::zero(), |acc, (b, c)| acc.add(&b.scale(c)));
                compose_with_right_inverse(&gamma, &self.operator)
            })
            .collect();
        Ok(FunctionalSpan::new(transported))
    }
}

impl fmt::Display for BoundaryProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", self.operator)?;
        for (i, b) in self.conditions.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}})")
    }
}

impl fmt::Debug for BoundaryProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoundaryProblem{self}")
    }
}

/// `E_p Dᵒ G` for `G f = ∫₀ˣ h(x-ξ) f(ξ) dξ`.
fn eval_after_right_inverse(point: u8, order: u32, t: &DiffOp, h: &ExpPoly) -> BoundaryFunctional {
    let n = t.order() as u32;
    if order < n {
        // h⁽ʲ⁾(0) = 0 for j < n-1, so differentiating under the integral adds no terms
        return match point {
            0 => BoundaryFunctional::zero(),
            _ => BoundaryFunctional::integral(h.derivative(order).reflect()),
        };
    }
    // Dⁿu = f - Σ tᵢDⁱu for u = Gf
    let shift = order - n;
    let mut out = BoundaryFunctional::eval(point as i64, shift).expect("validated point");
    for (i, ti) in t.coefficients()[..n as usize].iter().enumerate() {
        let ti = RatFuncE::from(ti.clone());
        if ti.is_zero() {
            continue;
        }
        out = out.sub(&eval_after_right_inverse(point, shift + i as u32, t, h).scale(&ti));
    }
    out
}

/// `γ ∘ G` in normalized form, `G` the right inverse with zero initial data.
pub(crate) fn compose_with_right_inverse(gamma: &BoundaryFunctional, t: &DiffOp) -> BoundaryFunctional {
    let h = t.impulse_response();
    let mut out = BoundaryFunctional::zero();
    for (p, o, c) in gamma.eval_terms() {
        out = out.add(&eval_after_right_inverse(p, o, t, &h).scale(c));
    }
    let w = gamma.weight();
    if !w.is_zero() {
        // ∫₀¹ w(x) ∫₀ˣ h(x-ξ) f(ξ) dξ dx = ∫₀¹ f(ξ) Σₖ zₖ(ξ) (Fₖ(1) - Fₖ(ξ)) dξ
        let mut weight = ExpPoly::zero();
        for (y, z) in h.separate_difference() {
            let big = w.mul(&y).integrate_0x();
            let at_one = ExpPoly::constant(big.evaluate(1).expect("point 1"));
            weight = weight.add(&z.mul(&at_one.sub(&big)));
        }
        out = out.add(&BoundaryFunctional::integral(weight));
    }
    out
}

/// `T⁻¹(span E) = span{T⁻e} + Ker T`.
pub fn preimage_of_exceptional(t: &DiffOp, exceptional: &[ExpPoly]) -> FnSpan {
    let mut all: Vec<ExpPoly> = exceptional.iter().map(|e| t.right_inverse_apply(e)).collect();
    all.extend(t.kernel_basis());
    FnSpan::new(all)
}

/// Semi-regular boundary problem with an exceptional space `E` complementing
/// `T(𝓑⊥)`; defines the generalized Green's operator `O(T, 𝓑, E)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GreenSpec {
    problem: BoundaryProblem,
    exceptional: FnSpan,
    compatibility: FunctionalSpan,
}

impl GreenSpec {
    pub fn new(problem: BoundaryProblem, exceptional: Vec<ExpPoly>) -> Result<Self, BoundaryError> {
        if !FnSpan::independent(&exceptional) {
            return Err(BoundaryError::DependentExceptional);
        }
        let compatibility = problem.compatibility()?;
        let m = eval_matrix_fn(compatibility.basis(), &exceptional);
        if !m.is_square() || m.rank() != m.rows() {
            return Err(BoundaryError::NotComplement);
        }
        Ok(GreenSpec {
            problem,
            exceptional: FnSpan::new(exceptional),
            compatibility,
        })
    }

    pub fn problem(&self) -> &BoundaryProblem {
        &self.problem
    }

    pub fn operator(&self) -> &DiffOp {
        &self.problem.operator
    }

    pub fn exceptional(&self) -> &FnSpan {
        &self.exceptional
    }

    pub fn compatibility(&self) -> &FunctionalSpan {
        &self.compatibility
    }

    /// The component `e ∈ E` of `f` along `T(𝓑⊥)`.
    pub fn exceptional_part(&self, f: &ExpPoly) -> Result<ExpPoly, BoundaryError> {
        if self.exceptional.is_zero() {
            return Ok(ExpPoly::zero());
        }
        let m = eval_matrix_fn(self.compatibility.basis(), self.exceptional.basis());
        let rhs: Vec<RatFuncE> = self.compatibility.basis().iter().map(|g| g.apply(f)).collect();
        let alpha = m.solve(&rhs)?.ok_or(BoundaryError::Inconsistent("projection onto E"))?;
        Ok(self.exceptional.combine(&alpha))
    }

    /// `G f`: the solution in `𝓑⊥` of `T u = f - e` with `e` the exceptional part.
    pub fn green_apply(&self, f: &ExpPoly) -> Result<ExpPoly, BoundaryError> {
        let t = &self.problem.operator;
        let g = f.sub(&self.exceptional_part(f)?);
        let particular = t.right_inverse_apply(&g);
        let kernel = t.kernel_basis();
        let m = eval_matrix_fn(&self.problem.conditions, &kernel);
        let rhs: Vec<RatFuncE> = self
            .problem
            .conditions
            .iter()
            .map(|b| b.apply(&particular).neg())
            .collect();
        let d = m.solve(&rhs)?.ok_or(BoundaryError::Inconsistent("boundary conditions"))?;
        Ok(kernel
            .iter()
            .zip(&d)
            .fold(particular, |acc, (y, c)| acc.add(&y.scale(c))))
    }
}

impl fmt::Display for GreenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{}, E = ", self.problem)?;
        write_exceptional(f, &self.exceptional)
    }
}

/// `constants` for `span{1}`, otherwise the span itself.
pub fn write_exceptional(f: &mut fmt::Formatter<'_>, e: &FnSpan) -> fmt::Result {
    if *e == FnSpan::new(vec![ExpPoly::from_i64(1)]) {
        write!(f, "constants")
    } else {
        write!(f, "{e}")
    }
}
