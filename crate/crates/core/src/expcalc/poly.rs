use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{rat, ratio, Field, RatFuncE, Rational};

use super::ExpCalcError;

/// Exponential polynomial `Σ c·xᵏ·e^{ax}` with integer `a` and coefficients
/// in ℚ(e). Terms are keyed by `(a, k)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    terms: BTreeMap<(i64, u32), RatFuncE>,
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = rat(1);
    for i in 0..k {
        acc = acc * rat((n - i) as i64) / rat((i + 1) as i64);
    }
    acc
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: RatFuncE) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(RatFuncE::from(c))
    }

    /// `c·xᵏ·e^{ax}`.
    pub fn term(c: RatFuncE, a: i64, k: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(a, k, c);
        p
    }

    /// `xᵏ`.
    pub fn x_pow(k: u32) -> Self {
        Self::term(RatFuncE::one(), 0, k)
    }

    pub fn x() -> Self {
        Self::x_pow(1)
    }

    /// `e^{ax}`.
    pub fn exp(a: i64) -> Self {
        Self::term(RatFuncE::one(), a, 0)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, u32), RatFuncE)>) -> Self {
        let mut p = Self::zero();
        for ((a, k), c) in terms {
            p.add_term(a, k, c);
        }
        p
    }

    fn add_term(&mut self, a: i64, k: u32, c: RatFuncE) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, k)).or_insert_with(RatFuncE::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&(a, k));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &RatFuncE)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: i64, k: u32) -> RatFuncE {
        self.terms.get(&(a, k)).cloned().unwrap_or_else(RatFuncE::zero)
    }

    pub fn keys(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value when `self` has no `x`-dependence.
    pub fn as_constant(&self) -> Option<RatFuncE> {
        match self.terms.len() {
            0 => Some(RatFuncE::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, k), c) in &rhs.terms {
            out.add_term(a, k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&RatFuncE::from(-1))
    }

    pub fn scale(&self, s: &RatFuncE) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        ExpPoly {
            terms: self.terms.iter().map(|(key, c)| (*key, c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, k1), c1) in &self.terms {
            for (&(a2, k2), c2) in &rhs.terms {
                out.add_term(a1 + a2, k1 + k2, c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::from_i64(1), |acc, _| acc.mul(self))
    }

    pub fn differentiate(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, k), c) in &self.terms {
            if k > 0 {
                out.add_term(a, k - 1, c.mul(&RatFuncE::from(k as i64)));
            }
            if a != 0 {
                out.add_term(a, k, c.mul(&RatFuncE::from(a)));
            }
        }
        out
    }

    pub fn derivative(&self, order: u32) -> Self {
        (0..order).fold(self.clone(), |f, _| f.differentiate())
    }

    /// The antiderivative vanishing at `0`.
    pub fn integrate_0x(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, k), c) in &self.terms {
            if a == 0 {
                out.add_term(0, k + 1, c.mul(&RatFuncE::from(ratio(1, k as i64 + 1))));
                continue;
            }
            // ∫ xᵏe^{ax} = e^{ax} Σⱼ (-1)ʲ k!/(k-j)! x^{k-j} / a^{j+1}
            let a_q = rat(a);
            let mut falling = rat(1);
            let mut a_pow = a_q.clone();
            let mut at_zero = rat(0);
            for j in 0..=k {
                let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
                let q = sign * falling.clone() / a_pow.clone();
                if j == k {
                    at_zero = q.clone();
                }
                out.add_term(a, k - j, c.mul(&RatFuncE::from(q)));
                falling *= rat((k - j) as i64);
                a_pow *= a_q.clone();
            }
            out.add_term(0, 0, c.mul(&RatFuncE::from(-at_zero)));
        }
        out
    }

    /// Value at `x = c` for `c ∈ {0, 1}`.
    pub fn evaluate(&self, c: i64) -> Result<RatFuncE, ExpCalcError> {
        match c {
            0 => Ok(self
                .terms
                .iter()
                .filter(|((_, k), _)| *k == 0)
                .fold(RatFuncE::zero(), |acc, (_, v)| acc.add(v))),
            1 => Ok(self
                .terms
                .iter()
                .fold(RatFuncE::zero(), |acc, (&(a, _), v)| acc.add(&v.mul(&RatFuncE::e_pow(a))))),
            _ => Err(ExpCalcError::UnsupportedPoint(c)),
        }
    }

    /// `∫₀¹ self`.
    pub fn integral_01(&self) -> RatFuncE {
        self.integrate_0x().evaluate(1).expect("point 1 is supported")
    }

    /// `x ↦ self(1 - x)`.
    pub fn reflect(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, k), c) in &self.terms {
            // (1-x)ᵏ e^{a} e^{-ax}
            let scale = c.mul(&RatFuncE::e_pow(a));
            for j in 0..=k {
                let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
                out.add_term(-a, j, scale.mul(&RatFuncE::from(sign * binomial(k, j))));
            }
        }
        out
    }

    /// `self(x - ξ) = Σ yᵢ(x) zᵢ(ξ)` as pairs `(yᵢ, zᵢ)`.
    pub fn separate_difference(&self) -> Vec<(ExpPoly, ExpPoly)> {
        let mut out = Vec::new();
        for (&(a, k), c) in &self.terms {
            for j in 0..=k {
                let sign = if (k - j) % 2 == 0 { rat(1) } else { rat(-1) };
                let coeff = c.mul(&RatFuncE::from(sign * binomial(k, j)));
                out.push((Self::term(coeff, a, j), Self::term(RatFuncE::one(), -a, k - j)));
            }
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, a: i64, k: u32) -> fmt::Result {
    let mut first = true;
    if k > 0 {
        first = false;
        if k == 1 {
            write!(f, "x")?;
        } else {
            write!(f, "x^{k}")?;
        }
    }
    if a != 0 {
        if !first {
            write!(f, "*")?;
        }
        match a {
            1 => write!(f, "exp(x)")?,
            -1 => write!(f, "exp(-x)")?,
            _ => write!(f, "exp({a}*x)")?,
        }
    }
    Ok(())
}

/// Writes `Σ cᵢ·mᵢ` with signs pulled out of the coefficients. `plain` marks
/// terms that are a bare coefficient.
pub(crate) fn write_signed_sum<T>(
    f: &mut fmt::Formatter<'_>,
    terms: &[(RatFuncE, T)],
    plain: impl Fn(&T) -> bool,
    body: impl Fn(&mut fmt::Formatter<'_>, &T) -> fmt::Result,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (c, t)) in terms.iter().enumerate() {
        let negative = c.has_negative_lead();
        let mag = if negative { c.neg() } else { c.clone() };
        match (i, negative) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if plain(t) {
            if mag.needs_parens() && terms.len() > 1 {
                write!(f, "({mag})")?;
            } else {
                write!(f, "{mag}")?;
            }
            continue;
        }
        if !mag.is_one() {
            if mag.needs_parens() {
                write!(f, "({mag})*")?;
            } else {
                write!(f, "{mag}*")?;
            }
        }
        body(f, t)?;
    }
    Ok(())
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(RatFuncE, (i64, u32))> = self.terms.iter().map(|(key, c)| (c.clone(), *key)).collect();
        write_signed_sum(f, &terms, |&(a, k)| a == 0 && k == 0, |f, &(a, k)| write_monomial(f, a, k))
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpPoly({self})")
    }
}
