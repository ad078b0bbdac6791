//! Exact scalar fields: arbitrary-precision rationals and rational functions
//! in the transcendental symbol `e`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduced fraction of arbitrary-precision integers. The denominator is always
/// positive and zero is stored as `0/1`.
pub type Rational = BigRational;

/// An exact field. Every value is kept in canonical form, so `==` is equality
/// of field elements.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Panics on division by zero.
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero in exact field"))
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense univariate polynomial over the rationals, coefficients from the
/// constant term upwards, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct Poly(Vec<Rational>);

impl Poly {
    fn trimmed(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    fn constant(q: Rational) -> Self {
        Self::trimmed(vec![q])
    }

    fn monomial(q: Rational, deg: usize) -> Self {
        let mut c = vec![<Rational as Zero>::zero(); deg + 1];
        c[deg] = q;
        Self::trimmed(c)
    }

    fn one() -> Self {
        Poly(vec![<Rational as One>::one()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    fn add(&self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let zero = <Rational as Zero>::zero();
        Self::trimmed(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + rhs.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::default();
        }
        let mut out = vec![<Rational as Zero>::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::trimmed(out)
    }

    fn scale(&self, q: &Rational) -> Poly {
        Self::trimmed(self.0.iter().map(|c| c * q).collect())
    }

    fn div_rem(&self, rhs: &Poly) -> (Poly, Poly) {
        let d = rhs.degree().expect("polynomial division by zero");
        let lead_inv = rhs.lead().unwrap().recip();
        let mut rem = self.0.clone();
        let mut quot = vec![<Rational as Zero>::zero(); self.0.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.len() - 1;
            let q = &rem[top] * &lead_inv;
            if !Zero::is_zero(&q) {
                for (j, b) in rhs.0.iter().enumerate() {
                    let t = &q * b;
                    rem[top - d + j] -= t;
                }
            }
            quot[top - d] = q;
            rem.pop();
        }
        (Self::trimmed(quot), Self::trimmed(rem))
    }

    fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    fn gcd(&self, rhs: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn is_monomial(&self) -> bool {
        self.0.iter().filter(|c| !Zero::is_zero(*c)).count() == 1
    }

    fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(<Rational as Zero>::zero(), |acc, c| acc * x + c)
    }

    fn term_count(&self) -> usize {
        self.0.iter().filter(|c| !Zero::is_zero(*c)).count()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.0.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            first = false;
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !One::is_one(&mag) {
                        write!(f, "{mag}*")?;
                    }
                    if deg == 1 {
                        write!(f, "e")?;
                    } else {
                        write!(f, "e^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Element of the rational function field ℚ(e). Numerator and denominator are
/// coprime and the denominator is monic, so the representation is unique.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncE {
    num: Poly,
    den: Poly,
}

impl RatFuncE {
    fn from_parts(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return Self::from_rational_const(<Rational as Zero>::zero());
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let l = den.lead().unwrap().recip();
        num = num.scale(&l);
        den = den.scale(&l);
        RatFuncE { num, den }
    }

    fn from_rational_const(q: Rational) -> Self {
        RatFuncE {
            num: Poly::constant(q),
            den: Poly::one(),
        }
    }

    /// The symbol `e` itself.
    pub fn e() -> Self {
        Self::e_pow(1)
    }

    /// `e^k` for any integer `k`.
    pub fn e_pow(k: i64) -> Self {
        let m = Poly::monomial(<Rational as One>::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RatFuncE { num: m, den: Poly::one() }
        } else {
            RatFuncE { num: Poly::one(), den: m }
        }
    }

    /// `Some(q)` when the value does not depend on `e`.
    pub fn as_rational(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(<Rational as Zero>::zero()),
            (Some(0), Some(0)) => Some(self.num.0[0].clone()),
            _ => None,
        }
    }

    /// Numerator coefficients, constant term first.
    pub fn numerator_coeffs(&self) -> &[Rational] {
        &self.num.0
    }

    /// Denominator coefficients, constant term first (monic).
    pub fn denominator_coeffs(&self) -> &[Rational] {
        &self.den.0
    }

    /// Substitutes a rational value for `e`; `None` if it is a pole.
    pub fn eval_at(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { Field::inv(self)? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = Field::mul(&acc, &base);
        }
        Some(acc)
    }

    /// Whether `Display` output must be parenthesised when used as a factor.
    pub(crate) fn needs_parens(&self) -> bool {
        if self.den != Poly::one() {
            return true;
        }
        self.num.term_count() > 1
    }

    /// Leading numerator coefficient is negative; used to pull a sign out
    /// when printing sums.
    pub(crate) fn has_negative_lead(&self) -> bool {
        self.num.lead().is_some_and(|l| l.is_negative())
    }
}

impl Field for RatFuncE {
    fn zero() -> Self {
        Self::from_rational_const(<Rational as Zero>::zero())
    }
    fn one() -> Self {
        Self::from_rational_const(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::from_parts(self.num.add(&rhs.num), self.den.clone());
        }
        Self::from_parts(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        Field::add(self, &Field::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::from_parts(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        RatFuncE {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::from_parts(self.den.clone(), self.num.clone()))
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_rational_const(q.clone())
    }
}

impl From<Rational> for RatFuncE {
    fn from(q: Rational) -> Self {
        Self::from_rational_const(q)
    }
}

impl From<i64> for RatFuncE {
    fn from(n: i64) -> Self {
        Self::from_rational_const(rat(n))
    }
}

macro_rules! forward_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl std::ops::$tr for RatFuncE {
            type Output = RatFuncE;
            fn $m(self, rhs: RatFuncE) -> RatFuncE {
                Field::$m(&self, &rhs)
            }
        }
        impl<'a> std::ops::$tr<&'a RatFuncE> for &'a RatFuncE {
            type Output = RatFuncE;
            fn $m(self, rhs: &'a RatFuncE) -> RatFuncE {
                Field::$m(self, rhs)
            }
        }
    )*};
}
forward_ops!(Add add, Sub sub, Mul mul, Div div);

impl std::ops::Neg for RatFuncE {
    type Output = RatFuncE;
    fn neg(self) -> RatFuncE {
        Field::neg(&self)
    }
}

impl fmt::Display for RatFuncE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.is_monomial() {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RatFuncE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFuncE({self})")
    }
}

impl PartialOrd for RatFuncE {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order on the canonical form; used only for deterministic
/// sorting, not a field order.
impl Ord for RatFuncE {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.den.0, &self.num.0).cmp(&(&other.den.0, &other.num.0))
    }
}
