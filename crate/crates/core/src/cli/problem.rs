use serde_json::Value;

use crate::boundary::{BoundaryProblem, GreenSpec};
use crate::expcalc::{BoundaryFunctional, ExpPoly};
use crate::matrix::QMatrix;
use crate::scalar::Rational;
use crate::subspace::{DualSubspace, Subspace};

use super::expr::{parse_diffop, parse_exppoly, parse_functional, parse_rational};
use super::CliError;

pub const SCHEMA: u64 = 1;

/// Subspace as written in a problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceSpec {
    Span(Vec<Vec<Rational>>),
    /// The orthogonal of the span of the given row vectors.
    Orthogonal(Vec<Vec<Rational>>),
}

impl SpaceSpec {
    pub fn resolve(&self, ambient: usize, path: &str) -> Result<Subspace, CliError> {
        let schema = |e: crate::subspace::SubspaceError| CliError::Schema(format!("{path}: {e}"));
        match self {
            SpaceSpec::Span(v) => Subspace::new(ambient, v).map_err(schema),
            SpaceSpec::Orthogonal(v) => Ok(DualSubspace::new(ambient, v).map_err(schema)?.orthogonal()),
        }
    }

    pub fn resolve_dual(&self, ambient: usize, path: &str) -> Result<DualSubspace, CliError> {
        Ok(match self {
            SpaceSpec::Orthogonal(v) => {
                DualSubspace::new(ambient, v).map_err(|e| CliError::Schema(format!("{path}: {e}")))?
            }
            SpaceSpec::Span(_) => self.resolve(ambient, path)?.orthogonal(),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatrixPayload {
    pub t1: Option<QMatrix>,
    pub t2: Option<QMatrix>,
    pub b1: Option<SpaceSpec>,
    pub e1: Option<SpaceSpec>,
    pub b2: Option<SpaceSpec>,
    pub e2: Option<SpaceSpec>,
    pub t: Option<QMatrix>,
    pub g: Option<QMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub spec: GreenSpec,
    pub forcing: Vec<ExpPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BvpPayload {
    pub problems: Vec<ProblemSpec>,
}

// parsed once per run, boxing buys nothing
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemFile {
    Matrix(MatrixPayload),
    Bvp(BvpPayload),
}

fn expr_err(path: &str, e: super::expr::ExprError) -> CliError {
    CliError::Expr {
        path: path.to_string(),
        column: e.column,
        message: e.message,
    }
}

fn scalar(v: &Value, path: &str) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(CliError::Schema(format!("{path}: numbers must be integers; write fractions as strings"))),
        },
        Value::String(s) => parse_rational(s).map_err(|e| expr_err(path, e)),
        _ => Err(CliError::Schema(format!("{path}: expected a scalar"))),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| CliError::Schema(format!("{path}: expected an array")))
}

fn vectors(v: &Value, path: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let p = format!("{path}[{i}]");
            array(row, &p)?
                .iter()
                .enumerate()
                .map(|(j, x)| scalar(x, &format!("{p}[{j}]")))
                .collect()
        })
        .collect()
}

pub fn matrix(v: &Value, path: &str) -> Result<QMatrix, CliError> {
    let rows = vectors(v, path)?;
    QMatrix::from_rows(rows).map_err(|e| CliError::Schema(format!("{path}: {e}")))
}

fn space(v: &Value, path: &str) -> Result<SpaceSpec, CliError> {
    match v {
        Value::Array(_) => Ok(SpaceSpec::Span(vectors(v, path)?)),
        Value::Object(o) => {
            let basis = o
                .get("basis")
                .ok_or_else(|| CliError::Schema(format!("{path}: missing \"basis\"")))?;
            let basis = vectors(basis, &format!("{path}.basis"))?;
            let dual = o.get("dual").and_then(Value::as_bool).unwrap_or(false);
            Ok(if dual { SpaceSpec::Orthogonal(basis) } else { SpaceSpec::Span(basis) })
        }
        _ => Err(CliError::Schema(format!("{path}: expected a list of vectors or a subspace object"))),
    }
}

fn strings(v: Option<&Value>, path: &str) -> Result<Vec<(String, String)>, CliError> {
    let Some(v) = v else { return Ok(Vec::new()) };
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let p = format!("{path}[{i}]");
            s.as_str()
                .map(|s| (p.clone(), s.to_string()))
                .ok_or_else(|| CliError::Schema(format!("{p}: expected a string")))
        })
        .collect()
}

fn bvp_problem(v: &Value, path: &str) -> Result<ProblemSpec, CliError> {
    let field = |name: &str| v.get(name);
    let op_src = field("operator")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Schema(format!("{path}: missing string \"operator\"")))?;
    let op_path = format!("{path}.operator");
    let operator = parse_diffop(op_src).map_err(|e| expr_err(&op_path, e))?;
    let conditions = strings(field("conditions"), &format!("{path}.conditions"))?
        .into_iter()
        .map(|(p, s)| parse_functional(&s).map_err(|e| expr_err(&p, e)))
        .collect::<Result<Vec<BoundaryFunctional>, _>>()?;
    let exceptional = strings(field("exceptional"), &format!("{path}.exceptional"))?
        .into_iter()
        .map(|(p, s)| parse_exppoly(&s).map_err(|e| expr_err(&p, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let forcing = strings(field("forcing"), &format!("{path}.forcing"))?
        .into_iter()
        .map(|(p, s)| parse_exppoly(&s).map_err(|e| expr_err(&p, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let in_path = |e| CliError::Invalid {
        path: path.to_string(),
        source: e,
    };
    let problem = BoundaryProblem::new(operator, conditions).map_err(in_path)?;
    let spec = GreenSpec::new(problem, exceptional).map_err(in_path)?;
    Ok(ProblemSpec { spec, forcing })
}

/// Parses a problem file; JSON syntax errors carry line and column.
pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
    if text.trim().is_empty() {
        return Err(CliError::Json {
            line: 1,
            column: 1,
            message: "empty input".into(),
        });
    }
    let root: Value = serde_json::from_str(text).map_err(|e| CliError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    match root.get("schema").and_then(Value::as_u64) {
        Some(SCHEMA) => {}
        Some(other) => return Err(CliError::Schema(format!("unsupported schema version {other}"))),
        None => return Err(CliError::Schema("missing \"schema\": 1".into())),
    }
    match root.get("kind").and_then(Value::as_str) {
        Some("matrix") => {
            let get_m = |k: &str| root.get(k).map(|v| matrix(v, k)).transpose();
            let get_s = |k: &str| root.get(k).map(|v| space(v, k)).transpose();
            Ok(ProblemFile::Matrix(MatrixPayload {
                t1: get_m("T1")?,
                t2: get_m("T2")?,
                b1: get_s("B1")?,
                e1: get_s("E1")?,
                b2: get_s("B2")?,
                e2: get_s("E2")?,
                t: get_m("T")?,
                g: get_m("G")?,
            }))
        }
        Some("bvp") => {
            let problems = root
                .get("problems")
                .ok_or_else(|| CliError::Schema("missing \"problems\"".into()))?;
            let problems = array(problems, "problems")?
                .iter()
                .enumerate()
                .map(|(i, p)| bvp_problem(p, &format!("problems[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ProblemFile::Bvp(BvpPayload { problems }))
        }
        Some(other) => Err(CliError::Schema(format!("unknown kind \"{other}\""))),
        None => Err(CliError::Schema("missing \"kind\"".into())),
    }
}
