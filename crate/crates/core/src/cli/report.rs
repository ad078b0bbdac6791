use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::boundary::{BoundaryWitness, FnSpan, FunctionalSpan};
use crate::expcalc::{DiffOp, ExpPoly};
use crate::geninv::{Conditions, RolReport, SpaceWitness};
use crate::matrix::QMatrix;
use crate::subspace::{DualSubspace, Subspace};

use super::expr::{parse_diffop, parse_exppoly, parse_functional, parse_rational, ExprError};

/// Mathematical object embedded in a report. Every scalar, function and
/// functional is written in the input grammar, so it parses back exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Object {
    Matrix { rows: Vec<Vec<String>> },
    Subspace { dual: bool, ambient: usize, basis: Vec<Vec<String>> },
    Functions { basis: Vec<String> },
    Functionals { basis: Vec<String> },
    Function { value: String },
    Operator { value: String },
    Text { value: String },
}

fn strings<T: fmt::Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

impl Object {
    pub fn matrix(m: &QMatrix) -> Self {
        Object::Matrix {
            rows: m.to_rows().iter().map(|r| strings(r)).collect(),
        }
    }

    pub fn subspace(s: &Subspace) -> Self {
        Object::Subspace {
            dual: false,
            ambient: s.ambient_dim(),
            basis: s.basis().iter().map(|v| strings(v)).collect(),
        }
    }

    pub fn dual_subspace(s: &DualSubspace) -> Self {
        Object::Subspace {
            dual: true,
            ambient: s.ambient_dim(),
            basis: s.basis().iter().map(|v| strings(v)).collect(),
        }
    }

    pub fn functions(s: &FnSpan) -> Self {
        Object::Functions { basis: strings(s.basis()) }
    }

    pub fn functionals(s: &FunctionalSpan) -> Self {
        Object::Functionals { basis: strings(s.basis()) }
    }

    pub fn function(f: &ExpPoly) -> Self {
        Object::Function { value: f.to_string() }
    }

    pub fn operator(t: &DiffOp) -> Self {
        Object::Operator { value: t.to_string() }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Object::Text { value: s.into() }
    }

    pub fn to_matrix(&self) -> Option<Result<QMatrix, ExprError>> {
        let Object::Matrix { rows } = self else { return None };
        Some(rows.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect::<Result<Vec<_>, _>>().map(
            |rows| QMatrix::from_rows_with_cols(rows, self.width()).expect("rows come from a matrix"),
        ))
    }

    fn width(&self) -> usize {
        match self {
            Object::Matrix { rows } => rows.first().map_or(0, Vec::len),
            _ => 0,
        }
    }

    fn vectors(basis: &[Vec<String>]) -> Result<Vec<Vec<crate::scalar::Rational>>, ExprError> {
        basis.iter().map(|v| v.iter().map(|s| parse_rational(s)).collect()).collect()
    }

    pub fn to_subspace(&self) -> Option<Result<Subspace, ExprError>> {
        match self {
            Object::Subspace { dual: false, ambient, basis } => {
                Some(Self::vectors(basis).map(|b| Subspace::new(*ambient, &b).expect("serialized basis")))
            }
            _ => None,
        }
    }

    pub fn to_dual_subspace(&self) -> Option<Result<DualSubspace, ExprError>> {
        match self {
            Object::Subspace { dual: true, ambient, basis } => {
                Some(Self::vectors(basis).map(|b| DualSubspace::new(*ambient, &b).expect("serialized basis")))
            }
            _ => None,
        }
    }

    pub fn to_functions(&self) -> Option<Result<FnSpan, ExprError>> {
        let Object::Functions { basis } = self else { return None };
        Some(basis.iter().map(|s| parse_exppoly(s)).collect::<Result<Vec<_>, _>>().map(FnSpan::new))
    }

    pub fn to_functionals(&self) -> Option<Result<FunctionalSpan, ExprError>> {
        let Object::Functionals { basis } = self else { return None };
        Some(basis.iter().map(|s| parse_functional(s)).collect::<Result<Vec<_>, _>>().map(FunctionalSpan::new))
    }

    pub fn to_function(&self) -> Option<Result<ExpPoly, ExprError>> {
        let Object::Function { value } = self else { return None };
        Some(parse_exppoly(value))
    }

    pub fn to_operator(&self) -> Option<Result<DiffOp, ExprError>> {
        let Object::Operator { value } = self else { return None };
        Some(parse_diffop(value))
    }
}

impl From<&SpaceWitness> for Object {
    fn from(w: &SpaceWitness) -> Self {
        match w {
            SpaceWitness::Primal(s) => Object::subspace(s),
            SpaceWitness::Dual(s) => Object::dual_subspace(s),
        }
    }
}

impl From<&BoundaryWitness> for Object {
    fn from(w: &BoundaryWitness) -> Self {
        match w {
            BoundaryWitness::Primal(s) => Object::functions(s),
            BoundaryWitness::Dual(s) => Object::functionals(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionValues {
    pub i: Option<bool>,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
    pub v: bool,
}

impl From<&Conditions> for ConditionValues {
    fn from(c: &Conditions) -> Self {
        ConditionValues {
            i: c.i,
            ii: c.ii,
            iii: c.iii,
            iv: c.iv,
            v: c.v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub label: String,
    pub lesser: Object,
    pub greater: Object,
}

/// One decided statement, with the supporting inclusions when available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionValues>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessEntry>,
}

impl Check {
    pub fn flag(name: impl Into<String>, verdict: bool) -> Self {
        Check {
            name: name.into(),
            verdict,
            conditions: None,
            consistent: None,
            witnesses: Vec::new(),
        }
    }

    pub fn from_rol<W>(name: impl Into<String>, r: &RolReport<W>) -> Self
    where
        for<'a> &'a W: Into<Object>,
    {
        Check {
            name: name.into(),
            verdict: r.verdict,
            conditions: Some((&r.conditions).into()),
            consistent: Some(r.consistent),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessEntry {
                    label: w.label.to_string(),
                    lesser: (&w.lesser).into(),
                    greater: (&w.greater).into(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedObject {
    pub name: String,
    pub object: Object,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u64,
    pub command: String,
    /// Decides the exit code; `None` for commands without a yes/no answer.
    pub verdict: Option<bool>,
    pub checks: Vec<Check>,
    pub objects: Vec<NamedObject>,
    pub seed: u64,
    pub elapsed_us: u64,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            schema: super::problem::SCHEMA,
            command: command.to_string(),
            verdict: None,
            checks: Vec::new(),
            objects: Vec::new(),
            seed,
            elapsed_us: 0,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, object: Object) {
        self.objects.push(NamedObject {
            name: name.into(),
            object,
        });
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn object(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|o| o.name == name).map(|o| &o.object)
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(false) => 1,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Human-readable form; `verbose` adds the witness spaces.
    pub fn render(&self, verbose: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for c in &self.checks {
            let _ = write!(out, "  {}: {}", c.name, c.verdict);
            if let Some(k) = &c.conditions {
                let i = k.i.map_or("n/a".to_string(), |b| b.to_string());
                let _ = write!(out, "  [i={i} ii={} iii={} iv={} v={}]", k.ii, k.iii, k.iv, k.v);
            }
            if c.consistent == Some(false) {
                let _ = write!(out, "  INCONSISTENT");
            }
            out.push('\n');
            if verbose {
                for w in &c.witnesses {
                    let _ = writeln!(out, "    ({}) {}", w.label, show(&w.lesser));
                    let _ = writeln!(out, "      <= {}", show(&w.greater));
                }
            }
        }
        for o in &self.objects {
            match &o.object {
                Object::Functionals { basis } | Object::Functions { basis } if basis.len() > 1 => {
                    let _ = writeln!(out, "{}:", o.name);
                    for b in basis {
                        let _ = writeln!(out, "  {b}");
                    }
                }
                Object::Matrix { rows } => {
                    let _ = writeln!(out, "{}:", o.name);
                    for r in rows {
                        let _ = writeln!(out, "  [{}]", r.join(", "));
                    }
                }
                other => {
                    let _ = writeln!(out, "{}: {}", o.name, show(other));
                }
            }
        }
        let _ = writeln!(out, "time: {:.3} ms", self.elapsed_us as f64 / 1000.0);
        out
    }
}

fn show(o: &Object) -> String {
    match o {
        Object::Matrix { rows } => format!(
            "[{}]",
            rows.iter().map(|r| format!("[{}]", r.join(", "))).collect::<Vec<_>>().join(", ")
        ),
        Object::Subspace { dual, basis, .. } => {
            let vs: Vec<String> = basis
                .iter()
                .map(|v| if *dual { format!("[{}]", v.join(", ")) } else { format!("({})", v.join(", ")) })
                .collect();
            format!("span{{{}}}", vs.join(", "))
        }
        Object::Functions { basis } if basis.len() == 1 && basis[0] == "1" => "constants".to_string(),
        Object::Functions { basis } | Object::Functionals { basis } => format!("span{{{}}}", basis.join(", ")),
        Object::Function { value } | Object::Operator { value } | Object::Text { value } => value.clone(),
    }
}
