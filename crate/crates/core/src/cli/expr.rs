//! Text grammar shared by functions, scalars, boundary functionals and
//! differential operators.
//!
//! ```text
//! sum     := ['-'] product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ['^' ['-'] integer]
//! atom    := integer | 'x' | 'e' | 'exp' '(' sum ')' | '(' sum ')'
//!          | 'E' '[' integer ']' ['D' ['^' integer]] | 'int' ['(' sum ')'] | 'D'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::expcalc::{BoundaryFunctional, DiffOp, ExpPoly};
use crate::scalar::{Field, RatFuncE, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ExprError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            // `ED` would otherwise swallow the derivative
            if word.len() > 1 && word != "exp" && word != "int" {
                for (j, ch) in word.chars().enumerate() {
                    out.push((Tok::Ident(ch.to_string()), start + j + 1));
                }
            } else {
                out.push((Tok::Ident(word), col));
            }
        } else if "+-*/^()[]".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ExprError {
                column: col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

/// Value of a subexpression. Constants live in `Fn`.
#[derive(Clone, Debug)]
enum Value {
    Fn(ExpPoly),
    Functional(BoundaryFunctional),
    /// Polynomial in `D`, constant term first.
    Op(Vec<RatFuncE>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Fn(_) => "function",
            Value::Functional(_) => "functional",
            Value::Op(_) => "operator",
        }
    }

    fn constant(&self) -> Option<RatFuncE> {
        match self {
            Value::Fn(f) => f.as_constant(),
            _ => None,
        }
    }
}

fn op_add(a: &[RatFuncE], b: &[RatFuncE]) -> Vec<RatFuncE> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(RatFuncE::zero);
            let y = b.get(i).cloned().unwrap_or_else(RatFuncE::zero);
            x.add(&y)
        })
        .collect()
}

fn op_mul(a: &[RatFuncE], b: &[RatFuncE]) -> Vec<RatFuncE> {
    let mut out = vec![RatFuncE::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn scale(v: &Value, c: &RatFuncE) -> Value {
    match v {
        Value::Fn(f) => Value::Fn(f.scale(c)),
        Value::Functional(b) => Value::Functional(b.scale(c)),
        Value::Op(p) => Value::Op(p.iter().map(|x| x.mul(c)).collect()),
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            column,
            message: message.into(),
        })
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(self.column(), format!("expected '{c}'"))
        }
    }

    fn peek_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(w)) if w == name)
    }

    fn integer(&mut self) -> Result<(BigInt, usize), ExprError> {
        let col = self.column();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok((n, col))
            }
            _ => self.err(col, "expected an integer"),
        }
    }

    fn small(&mut self) -> Result<(i64, usize), ExprError> {
        let (n, col) = self.integer()?;
        match n.to_i64() {
            Some(v) if v.unsigned_abs() <= 10_000 => Ok((v, col)),
            _ => self.err(col, "integer too large"),
        }
    }

    fn sum(&mut self) -> Result<Value, ExprError> {
        let col = self.column();
        let mut acc = if self.eat_sym('-') {
            let v = self.product()?;
            scale(&v, &RatFuncE::from(-1))
        } else {
            self.product()?
        };
        loop {
            let sign = if self.eat_sym('+') {
                1
            } else if self.eat_sym('-') {
                -1
            } else {
                return Ok(acc);
            };
            let rhs_col = self.column();
            let rhs = scale(&self.product()?, &RatFuncE::from(sign));
            acc = self.add(acc, rhs, col.min(rhs_col))?;
        }
    }

    fn add(&self, a: Value, b: Value, col: usize) -> Result<Value, ExprError> {
        Ok(match (a, b) {
            (Value::Fn(f), Value::Fn(g)) => Value::Fn(f.add(&g)),
            (Value::Functional(f), Value::Functional(g)) => Value::Functional(f.add(&g)),
            (Value::Op(p), Value::Op(q)) => Value::Op(op_add(&p, &q)),
            (Value::Op(p), c @ Value::Fn(_)) | (c @ Value::Fn(_), Value::Op(p)) => match c.constant() {
                Some(k) => Value::Op(op_add(&p, &[k])),
                None => return self.err(col, "cannot add a function to an operator"),
            },
            (a, b) => return self.err(col, format!("cannot add {} and {}", a.kind(), b.kind())),
        })
    }

    fn product(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let col = self.column();
            if self.eat_sym('*') {
                let rhs = self.unary()?;
                acc = self.mul(acc, rhs, col)?;
            } else if self.eat_sym('/') {
                let rhs = self.unary()?;
                let c = match rhs.constant() {
                    Some(c) => c,
                    None => return self.err(col, "can only divide by a constant"),
                };
                match c.inv() {
                    Some(inv) => acc = scale(&acc, &inv),
                    None => return self.err(col, "division by zero"),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn mul(&self, a: Value, b: Value, col: usize) -> Result<Value, ExprError> {
        if let Some(c) = a.constant() {
            return Ok(scale(&b, &c));
        }
        if let Some(c) = b.constant() {
            return Ok(scale(&a, &c));
        }
        Ok(match (a, b) {
            (Value::Fn(f), Value::Fn(g)) => Value::Fn(f.mul(&g)),
            (Value::Op(p), Value::Op(q)) => Value::Op(op_mul(&p, &q)),
            (a, b) => return self.err(col, format!("cannot multiply {} by {}", a.kind(), b.kind())),
        })
    }

    fn unary(&mut self) -> Result<Value, ExprError> {
        if self.eat_sym('-') {
            let v = self.unary()?;
            return Ok(scale(&v, &RatFuncE::from(-1)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ExprError> {
        let base = self.atom()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let negative = self.eat_sym('-');
        let (n, col) = self.small()?;
        let n = if negative { -n } else { n };
        if let Some(c) = base.constant() {
            return match c.pow(n) {
                Some(p) => Ok(Value::Fn(ExpPoly::constant(p))),
                None => self.err(col, "zero to a negative power"),
            };
        }
        if n < 0 {
            return self.err(col, "negative powers are only allowed for constants");
        }
        Ok(match base {
            Value::Fn(f) => Value::Fn(f.pow(n as u32)),
            Value::Op(p) => Value::Op((0..n).fold(vec![RatFuncE::one()], |acc, _| op_mul(&acc, &p))),
            Value::Functional(_) => return self.err(col, "cannot raise a functional to a power"),
        })
    }

    fn atom(&mut self) -> Result<Value, ExprError> {
        let col = self.column();
        let tok = match self.peek().cloned() {
            Some(t) => t,
            None => return self.err(col, "unexpected end of input"),
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Value::Fn(ExpPoly::constant(RatFuncE::from(Rational::from(n))))),
            Tok::Sym('(') => {
                let v = self.sum()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Sym(c) => self.err(col, format!("unexpected '{c}'")),
            Tok::Ident(w) => match w.as_str() {
                "x" => Ok(Value::Fn(ExpPoly::x())),
                "e" => Ok(Value::Fn(ExpPoly::constant(RatFuncE::e()))),
                "D" => Ok(Value::Op(vec![RatFuncE::zero(), RatFuncE::one()])),
                "exp" => {
                    self.expect_sym('(')?;
                    let arg_col = self.column();
                    let arg = self.sum()?;
                    self.expect_sym(')')?;
                    self.exponential(arg, arg_col)
                }
                "int" => {
                    if self.eat_sym('(') {
                        let w = self.sum()?;
                        self.expect_sym(')')?;
                        match w {
                            Value::Fn(w) => Ok(Value::Functional(BoundaryFunctional::integral(w))),
                            other => self.err(col, format!("integral weight must be a function, got {}", other.kind())),
                        }
                    } else {
                        Ok(Value::Functional(BoundaryFunctional::integral(ExpPoly::from_i64(1))))
                    }
                }
                "E" => {
                    self.expect_sym('[')?;
                    let (p, pcol) = self.small()?;
                    self.expect_sym(']')?;
                    let mut order = 0;
                    if self.peek_ident("D") {
                        self.pos += 1;
                        order = 1;
                        if self.eat_sym('^') {
                            let (k, kcol) = self.small()?;
                            if k < 0 {
                                return self.err(kcol, "derivative order must be nonnegative");
                            }
                            order = k as u32;
                        }
                    }
                    match BoundaryFunctional::eval(p, order) {
                        Ok(b) => Ok(Value::Functional(b)),
                        Err(_) => self.err(pcol, "evaluation point must be 0 or 1"),
                    }
                }
                other => self.err(col, format!("unknown symbol '{other}'")),
            },
        }
    }

    /// `exp(a·x + c)` with integers `a`, `c`.
    fn exponential(&self, arg: Value, col: usize) -> Result<Value, ExprError> {
        let f = match arg {
            Value::Fn(f) => f,
            other => return self.err(col, format!("exp of a {}", other.kind())),
        };
        let mut a = 0;
        let mut c = 0;
        for (&(ea, k), coeff) in f.terms() {
            let q = coeff.as_rational().filter(|q| q.is_integer()).and_then(|q| q.to_integer().to_i64());
            match (ea, k, q) {
                (0, 1, Some(v)) => a = v,
                (0, 0, Some(v)) => c = v,
                _ => return self.err(col, "exponent must be an integer multiple of x plus an integer"),
            }
        }
        Ok(Value::Fn(ExpPoly::exp(a).scale(&RatFuncE::e_pow(c))))
    }
}

fn parse_value(src: &str) -> Result<Value, ExprError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(ExprError {
            column: 1,
            message: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.chars().count() + 1,
    };
    let v = p.sum()?;
    if p.pos < p.toks.len() {
        return p.err(p.column(), "unexpected trailing input");
    }
    Ok(v)
}

pub fn parse_exppoly(src: &str) -> Result<ExpPoly, ExprError> {
    match parse_value(src)? {
        Value::Fn(f) => Ok(f),
        other => Err(ExprError {
            column: 1,
            message: format!("expected a function, got {}", other.kind()),
        }),
    }
}

/// Element of ℚ(e) such as `5/12` or `(e^2+1)/e`.
pub fn parse_scalar(src: &str) -> Result<RatFuncE, ExprError> {
    parse_value(src)?.constant().ok_or(ExprError {
        column: 1,
        message: "expected a constant".into(),
    })
}

pub fn parse_rational(src: &str) -> Result<Rational, ExprError> {
    parse_scalar(src)?.as_rational().ok_or(ExprError {
        column: 1,
        message: "expected a rational number".into(),
    })
}

pub fn parse_functional(src: &str) -> Result<BoundaryFunctional, ExprError> {
    match parse_value(src)? {
        Value::Functional(b) => Ok(b),
        Value::Fn(f) if f.is_zero() => Ok(BoundaryFunctional::zero()),
        other => Err(ExprError {
            column: 1,
            message: format!("expected a boundary functional, got {}", other.kind()),
        }),
    }
}

pub fn parse_diffop(src: &str) -> Result<DiffOp, ExprError> {
    let coeffs = match parse_value(src)? {
        Value::Op(p) => p,
        other => {
            return Err(ExprError {
                column: 1,
                message: format!("expected a differential operator, got {}", other.kind()),
            })
        }
    };
    let rational = coeffs
        .iter()
        .map(|c| c.as_rational())
        .collect::<Option<Vec<_>>>()
        .ok_or(ExprError {
            column: 1,
            message: "operator coefficients must be rational".into(),
        })?;
    DiffOp::from_rational_coeffs(&rational).map_err(|e| ExprError {
        column: 1,
        message: e.to_string(),
    })
}
