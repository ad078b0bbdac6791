use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::Matrix;
use crate::scalar::{rat, RatFuncE, Rational};

use super::poly::{write_signed_sum, ExpPoly};
use super::ExpCalcError;

/// Monic constant-coefficient operator `Dⁿ + tₙ₋₁Dⁿ⁻¹ + … + t₀` whose
/// characteristic polynomial splits over ℤ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    coeffs: Vec<Rational>,
    roots: Vec<i64>,
}

fn eval_poly(c: &[Rational], x: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, ci| acc * x + ci)
}

/// Quotient of `c` by `x - r`, assuming `r` is a root.
fn deflate(c: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = c.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        carry = carry * r + &c[i + 1];
        q[i] = carry.clone();
    }
    q
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn integer_roots(coeffs: &[Rational]) -> Result<Vec<i64>, ExpCalcError> {
    let mut c = coeffs.to_vec();
    let mut roots = Vec::new();
    while c.len() > 1 && c[0].is_zero() {
        roots.push(0);
        c.remove(0);
    }
    if c.len() > 1 {
        // integer roots divide L·t₀ where L clears all denominators
        let lcm = c
            .iter()
            .fold(BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
        let bound = (Rational::from(lcm) * &c[0]).abs().to_integer();
        let n = bound
            .to_u64()
            .ok_or_else(|| ExpCalcError::Unsupported(format!("constant term {} too large", c[0])))?;
        for d in divisors(n) {
            for r in [-(d as i64), d as i64] {
                let rq = rat(r);
                while c.len() > 1 && eval_poly(&c, &rq).is_zero() {
                    roots.push(r);
                    c = deflate(&c, &rq);
                }
            }
        }
    }
    if c.len() > 1 {
        let rest = DiffOp { coeffs: c, roots: vec![] };
        return Err(ExpCalcError::NonIntegerRoots(rest.to_string()));
    }
    roots.sort_unstable();
    Ok(roots)
}

impl DiffOp {
    /// Coefficients of `D⁰, …, Dⁿ`; the last one must be `1`.
    pub fn from_rational_coeffs(coeffs: &[Rational]) -> Result<Self, ExpCalcError> {
        let mut c = coeffs.to_vec();
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        if c.len() < 2 {
            return Err(ExpCalcError::OrderZero);
        }
        if !c.last().unwrap().is_one() {
            return Err(ExpCalcError::NotMonic);
        }
        let roots = integer_roots(&c)?;
        Ok(DiffOp { coeffs: c, roots })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, ExpCalcError> {
        Self::from_rational_coeffs(&coeffs.iter().map(|&c| rat(c)).collect::<Vec<_>>())
    }

    /// `Π (D - aᵢ)`.
    pub fn from_roots(roots: &[i64]) -> Result<Self, ExpCalcError> {
        let mut c = vec![rat(1)];
        for &a in roots {
            let mut next = vec![Rational::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * rat(a);
            }
            c = next;
        }
        Self::from_rational_coeffs(&c)
    }

    /// `Dᵏ`.
    pub fn d_pow(k: u32) -> Result<Self, ExpCalcError> {
        Self::from_roots(&vec![0; k as usize])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients of `D⁰, …, Dⁿ`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Characteristic roots in ascending order, with multiplicity.
    pub fn roots(&self) -> &[i64] {
        &self.roots
    }

    /// The composite `self ∘ rhs`; constant coefficients commute.
    pub fn mul(&self, rhs: &DiffOp) -> DiffOp {
        let mut roots = self.roots.clone();
        roots.extend_from_slice(&rhs.roots);
        Self::from_roots(&roots).expect("product of split monic operators")
    }

    pub fn apply(&self, f: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        let mut df = f.clone();
        for c in &self.coeffs {
            if !c.is_zero() {
                out = out.add(&df.scale(&RatFuncE::from(c.clone())));
            }
            df = df.differentiate();
        }
        out
    }

    /// `xʲe^{ax}` for each root `a` of multiplicity `m` and `j < m`.
    pub fn kernel_basis(&self) -> Vec<ExpPoly> {
        let mut out = Vec::with_capacity(self.order());
        let mut i = 0;
        while i < self.roots.len() {
            let a = self.roots[i];
            let mut j = 0;
            while i < self.roots.len() && self.roots[i] == a {
                out.push(ExpPoly::x_pow(j).mul(&ExpPoly::exp(a)));
                j += 1;
                i += 1;
            }
        }
        out
    }

    /// A solution of `T u = f` with zero initial data at `0`, built from
    /// `(D - a)⁻¹g = e^{ax} ∫₀ˣ e^{-aξ} g(ξ) dξ` over the roots in order.
    pub fn right_inverse_apply(&self, f: &ExpPoly) -> ExpPoly {
        self.roots.iter().fold(f.clone(), |g, &a| {
            ExpPoly::exp(a).mul(&ExpPoly::exp(-a).mul(&g).integrate_0x())
        })
    }

    /// The kernel element `h` with `h⁽ʲ⁾(0) = 0` for `j < n-1` and
    /// `h⁽ⁿ⁻¹⁾(0) = 1`, so that the right inverse is `f ↦ ∫₀ˣ h(x-ξ) f(ξ) dξ`.
    pub fn impulse_response(&self) -> ExpPoly {
        let n = self.order();
        let basis = self.kernel_basis();
        let mut m = Matrix::<RatFuncE>::zeros(n, n);
        for (k, y) in basis.iter().enumerate() {
            let mut d = y.clone();
            for j in 0..n {
                m.set(j, k, d.evaluate(0).expect("point 0"));
                d = d.differentiate();
            }
        }
        let mut rhs = vec![<RatFuncE as crate::scalar::Field>::zero(); n];
        rhs[n - 1] = <RatFuncE as crate::scalar::Field>::one();
        let c = m
            .solve(&rhs)
            .expect("square system")
            .expect("Wronskian at 0 is invertible");
        basis
            .iter()
            .zip(&c)
            .fold(ExpPoly::zero(), |acc, (y, ck)| acc.add(&y.scale(ck)))
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(RatFuncE, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (RatFuncE::from(c.clone()), i))
            .collect();
        write_signed_sum(f, &terms, |&i| i == 0, |f, &i| match i {
            1 => write!(f, "D"),
            _ => write!(f, "D^{i}"),
        })
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn t2() -> DiffOp {
        DiffOp::from_i64(&[-1, 0, 1]).unwrap()
    }

    #[test]
    fn roots_and_kernels() {
        let d2 = DiffOp::d_pow(2).unwrap();
        assert_eq!(d2.kernel_basis(), vec![ExpPoly::from_i64(1), ExpPoly::x()]);
        assert_eq!(t2().roots(), &[-1, 1]);
        assert_eq!(t2().kernel_basis(), vec![ExpPoly::exp(-1), ExpPoly::exp(1)]);
        let p = d2.mul(&t2());
        assert_eq!(p.to_string(), "D^4 - D^2");
        assert_eq!(p.roots(), &[-1, 0, 0, 1]);
        for y in p.kernel_basis() {
            assert!(p.apply(&y).is_zero());
        }
    }

    #[test]
    fn applies_to_cubic() {
        let p = DiffOp::from_i64(&[0, 0, -1, 0, 1]).unwrap();
        assert_eq!(p.apply(&ExpPoly::x_pow(3)), ExpPoly::x().scale(&RatFuncE::from(-6)));
        assert!(t2().apply(&ExpPoly::exp(1)).is_zero());
    }

    #[test]
    fn right_inverses() {
        let d2 = DiffOp::d_pow(2).unwrap();
        assert_eq!(
            d2.right_inverse_apply(&ExpPoly::from_i64(1)),
            ExpPoly::x_pow(2).scale(&RatFuncE::from(ratio(1, 2)))
        );
        let half = RatFuncE::from(ratio(1, 2));
        let expected = ExpPoly::exp(1)
            .add(&ExpPoly::exp(-1))
            .scale(&half)
            .sub(&ExpPoly::from_i64(1));
        assert_eq!(t2().right_inverse_apply(&ExpPoly::from_i64(1)), expected);
        let d = DiffOp::d_pow(1).unwrap();
        assert_eq!(d.right_inverse_apply(&ExpPoly::exp(1)), ExpPoly::exp(1).sub(&ExpPoly::from_i64(1)));
    }

    #[test]
    fn impulse_responses() {
        assert_eq!(DiffOp::d_pow(2).unwrap().impulse_response(), ExpPoly::x());
        let half = RatFuncE::from(ratio(1, 2));
        assert_eq!(t2().impulse_response(), ExpPoly::exp(1).sub(&ExpPoly::exp(-1)).scale(&half));
    }

    #[test]
    fn validation() {
        assert_eq!(DiffOp::from_i64(&[1, 0, 2]), Err(ExpCalcError::NotMonic));
        assert_eq!(DiffOp::from_i64(&[3]), Err(ExpCalcError::OrderZero));
        assert!(matches!(DiffOp::from_i64(&[1, 0, 1]), Err(ExpCalcError::NonIntegerRoots(_))));
        assert!(matches!(DiffOp::from_i64(&[-2, 0, 1]), Err(ExpCalcError::NonIntegerRoots(_))));
        let op = DiffOp::from_rational_coeffs(&[ratio(1, 2), ratio(-3, 2), rat(1)]);
        assert!(matches!(op, Err(ExpCalcError::NonIntegerRoots(_))));
        assert_eq!(DiffOp::from_i64(&[2, -3, 1]).unwrap().roots(), &[1, 2]);
        assert_eq!(DiffOp::from_i64(&[2, -3, 1]).unwrap().to_string(), "D^2 - 3*D + 2");
    }
}
