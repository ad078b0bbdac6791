//! Command-line front end: JSON problem files in, verdict reports out.
//!
//! Exit codes: 0 when the verdict is true or the command has none, 1 when
//! the verdict is false, 2 on any error.

mod expr;
mod problem;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::boundary::{self, BoundaryError, FnSpan, GreenSpec};
use crate::expcalc::ExpPoly;
use crate::geninv::{self, GenInvError};
use crate::matrix::QMatrix;
use crate::scalar::Rational;
use crate::subspace::Subspace;

pub use expr::{parse_diffop, parse_exppoly, parse_functional, parse_rational, parse_scalar, ExprError};
pub use problem::{parse, BvpPayload, MatrixPayload, ProblemFile, ProblemSpec, SpaceSpec, SCHEMA};
pub use report::{Check, ConditionValues, NamedObject, Object, Report, WitnessEntry};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{0}")]
    Schema(String),
    #[error("{path}, column {column}: {message}")]
    Expr { path: String, column: usize, message: String },
    #[error("{path}: {source}")]
    Invalid { path: String, source: BoundaryError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    GenInv(#[from] GenInvError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    MatrixRol,
    MatrixCompose,
    MatrixVerify,
    BvpCompat,
    BvpGreen,
    BvpRol,
    BvpCompose,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::MatrixRol => "matrix-rol",
            Command::MatrixCompose => "matrix-compose",
            Command::MatrixVerify => "matrix-verify",
            Command::BvpCompat => "bvp-compat",
            Command::BvpGreen => "bvp-green",
            Command::BvpRol => "bvp-rol",
            Command::BvpCompose => "bvp-compose",
        }
    }
}

#[derive(Clone, Debug, Default, Args)]
pub struct Flags {
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Seed for the randomized self-checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Include witness subspaces in text output.
    #[arg(long)]
    pub verbose: bool,
    /// Forcing function for bvp-green, replacing the ones in the file.
    #[arg(long)]
    pub rhs: Option<String>,
}

#[derive(Debug, Args)]
struct Invocation {
    /// Problem file (JSON).
    file: PathBuf,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Decide the outer and inner reverse order laws for a matrix pair.
    MatrixRol(Invocation),
    /// Compute G₂G₁ implicitly from the defining spaces.
    MatrixCompose(Invocation),
    /// Classify G as an inner, outer or reflexive inverse of T.
    MatrixVerify(Invocation),
    /// Compatibility conditions and regularity of boundary problems.
    BvpCompat(Invocation),
    /// Apply generalized Green's operators to forcing functions.
    BvpGreen(Invocation),
    /// Decide whether G₂G₁ is a generalized Green's operator of T₁T₂.
    BvpRol(Invocation),
    /// Boundary problem of the product G₂G₁.
    BvpCompose(Invocation),
}

#[derive(Debug, Parser)]
#[command(name = "geninv", version, about = "Exact generalized inverses and reverse order laws")]
struct Cli {
    #[command(subcommand)]
    sub: Sub,
}

/// Parses `args` (including the program name), runs, prints, and returns
/// the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (command, inv) = match cli.sub {
        Sub::MatrixRol(i) => (Command::MatrixRol, i),
        Sub::MatrixCompose(i) => (Command::MatrixCompose, i),
        Sub::MatrixVerify(i) => (Command::MatrixVerify, i),
        Sub::BvpCompat(i) => (Command::BvpCompat, i),
        Sub::BvpGreen(i) => (Command::BvpGreen, i),
        Sub::BvpRol(i) => (Command::BvpRol, i),
        Sub::BvpCompose(i) => (Command::BvpCompose, i),
    };
    let result = std::fs::read_to_string(&inv.file)
        .map_err(|source| CliError::Io {
            path: inv.file.display().to_string(),
            source,
        })
        .and_then(|text| run(command, &text, &inv.flags));
    match result {
        Ok(report) => {
            if inv.flags.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render(inv.flags.verbose));
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs `command` on the problem file contents `text`.
pub fn run(command: Command, text: &str, flags: &Flags) -> Result<Report, CliError> {
    let start = Instant::now();
    let file = parse(text)?;
    let mut report = Report::new(command.name(), flags.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
    match (command, file) {
        (Command::MatrixRol, ProblemFile::Matrix(m)) => matrix_rol(&m, &mut report, &mut rng)?,
        (Command::MatrixCompose, ProblemFile::Matrix(m)) => matrix_compose(&m, &mut report, &mut rng)?,
        (Command::MatrixVerify, ProblemFile::Matrix(m)) => matrix_verify(&m, &mut report)?,
        (Command::BvpCompat, ProblemFile::Bvp(b)) => bvp_compat(&b, &mut report)?,
        (Command::BvpGreen, ProblemFile::Bvp(b)) => bvp_green(&b, flags, &mut report, &mut rng)?,
        (Command::BvpRol, ProblemFile::Bvp(b)) => bvp_rol(&b, &mut report)?,
        (Command::BvpCompose, ProblemFile::Bvp(b)) => bvp_compose(&b, &mut report, &mut rng)?,
        (c, _) => {
            let want = if c.name().starts_with("matrix") { "matrix" } else { "bvp" };
            return Err(CliError::Schema(format!("{} needs a problem file of kind \"{want}\"", c.name())));
        }
    }
    report.elapsed_us = start.elapsed().as_micros().try_into().unwrap_or(u64::MAX);
    Ok(report)
}

fn need<'a, T>(x: &'a Option<T>, name: &str, cmd: &str) -> Result<&'a T, CliError> {
    x.as_ref().ok_or_else(|| CliError::Usage(format!("{cmd} needs \"{name}\" in the problem file")))
}

struct MatrixData {
    t1: QMatrix,
    t2: QMatrix,
    b1: Subspace,
    e1: Subspace,
    b2: Subspace,
    e2: Subspace,
}

fn matrix_data(m: &MatrixPayload, cmd: &str) -> Result<MatrixData, CliError> {
    let t1 = need(&m.t1, "T1", cmd)?.clone();
    let t2 = need(&m.t2, "T2", cmd)?.clone();
    if t1.cols() != t2.rows() {
        return Err(CliError::Schema(format!(
            "T1 is {}x{} and T2 is {}x{}; the product T1*T2 is undefined",
            t1.rows(),
            t1.cols(),
            t2.rows(),
            t2.cols()
        )));
    }
    Ok(MatrixData {
        b1: need(&m.b1, "B1", cmd)?.resolve(t1.cols(), "B1")?,
        e1: need(&m.e1, "E1", cmd)?.resolve(t1.rows(), "E1")?,
        b2: need(&m.b2, "B2", cmd)?.resolve(t2.cols(), "B2")?,
        e2: need(&m.e2, "E2", cmd)?.resolve(t2.rows(), "E2")?,
        t1,
        t2,
    })
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| Rational::from_integer(rng.gen_range(-5i64..=5).into())).collect()
}

/// Checks `G T G x = G x` on random vectors. A counterexample settles the
/// question; agreement only supports it.
fn sampled_outer(t: &QMatrix, g: &QMatrix, rng: &mut ChaCha8Rng) -> Result<bool, CliError> {
    for _ in 0..16 {
        let x = random_vector(rng, g.cols());
        let gx = g.mul_vec(&x).map_err(GenInvError::from)?;
        let tgx = t.mul_vec(&gx).map_err(GenInvError::from)?;
        if g.mul_vec(&tgx).map_err(GenInvError::from)? != gx {
            return Ok(false);
        }
    }
    Ok(true)
}

fn matrix_rol(m: &MatrixPayload, report: &mut Report, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let d = matrix_data(m, "matrix-rol")?;
    let outer = geninv::rol_outer_check(&d.t1, &d.t2, &d.b1, &d.e1, &d.b2, &d.e2)?;
    let inner = geninv::rol_inner_check(&d.t1, &d.t2, &d.b1, &d.e2)?;
    let g1 = geninv::construct_outer(&d.t1, &d.b1, &d.e1)?;
    let g2 = geninv::construct_outer(&d.t2, &d.b2, &d.e2)?;
    let product = g2.dot(&g1);
    let sampled = sampled_outer(&d.t1.dot(&d.t2), &product, rng)?;

    report.verdict = Some(outer.verdict);
    report.checks.push(Check::from_rol("outer", &outer));
    report.checks.push(Check::from_rol("inner", &inner));
    report.checks.push(Check::flag("all_inner", geninv::rol_all_inner(&d.t1, &d.t2)?));
    report.checks.push(Check::flag("sampled_outer_agrees", sampled || !outer.verdict));
    report.push("G1", Object::matrix(&g1));
    report.push("G2", Object::matrix(&g2));
    report.push("G2G1", Object::matrix(&product));
    Ok(())
}

fn matrix_compose(m: &MatrixPayload, report: &mut Report, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let d = matrix_data(m, "matrix-compose")?;
    let scr_b1 = need(&m.b1, "B1", "matrix-compose")?.resolve_dual(d.t1.cols(), "B1")?;
    let scr_b2 = need(&m.b2, "B2", "matrix-compose")?.resolve_dual(d.t2.cols(), "B2")?;
    match geninv::product_implicit(&d.t1, &d.t2, &scr_b1, &d.e1, &scr_b2, &d.e2) {
        Ok(p) => {
            let explicit = geninv::construct_outer(&d.t2, &d.b2, &d.e2)?.dot(&geninv::construct_outer(&d.t1, &d.b1, &d.e1)?);
            let product = p.realize()?;
            let mut agree = true;
            for _ in 0..16 {
                let x = random_vector(rng, product.cols());
                agree &= product.mul_vec(&x).map_err(GenInvError::from)? == explicit.mul_vec(&x).map_err(GenInvError::from)?;
            }
            report.verdict = Some(true);
            report.checks.push(Check::flag("implicit_matches_explicit", agree));
            report.push("T1T2", Object::matrix(&p.operator));
            report.push("G2G1", Object::matrix(&product));
            report.push("dual_image", Object::dual_subspace(&p.dual_image));
            report.push("image", Object::subspace(&p.image()));
            report.push("kernel", Object::subspace(&p.kernel));
        }
        Err(GenInvError::ReverseOrderLawFails { .. }) => {
            let outer = geninv::rol_outer_check(&d.t1, &d.t2, &d.b1, &d.e1, &d.b2, &d.e2)?;
            report.verdict = Some(false);
            report.checks.push(Check::from_rol("outer", &outer));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn matrix_verify(m: &MatrixPayload, report: &mut Report) -> Result<(), CliError> {
    let (t, g) = match (&m.t, &m.g) {
        (Some(t), Some(g)) => (t.clone(), g.clone()),
        (Some(_), None) | (None, Some(_)) => {
            return Err(CliError::Usage("matrix-verify needs both \"T\" and \"G\"".into()));
        }
        (None, None) => {
            // Verify the outer inverse built from T1, B1, E1.
            let t1 = need(&m.t1, "T", "matrix-verify")?.clone();
            let b1 = need(&m.b1, "B1", "matrix-verify")?.resolve(t1.cols(), "B1")?;
            let e1 = need(&m.e1, "E1", "matrix-verify")?.resolve(t1.rows(), "E1")?;
            let g = geninv::construct_outer(&t1, &b1, &e1)?;
            (t1, g)
        }
    };
    let v = geninv::verify(&t, &g)?;
    report.verdict = Some(v.inner || v.outer);
    report.checks.push(Check::flag("inner", v.inner));
    report.checks.push(Check::flag("outer", v.outer));
    report.checks.push(Check::flag("reflexive", v.reflexive));
    report.checks.push(Check::flag("seven_way_agree", v.seven_way.agree));
    report.push("T", Object::matrix(&t));
    report.push("G", Object::matrix(&g));
    Ok(())
}

fn bvp_compat(b: &BvpPayload, report: &mut Report) -> Result<(), CliError> {
    for (i, p) in b.problems.iter().enumerate() {
        let problem = p.spec.problem();
        let r = problem.regularity();
        report.checks.push(Check::flag(format!("problems[{i}].regular"), r.regular));
        report.checks.push(Check::flag(format!("problems[{i}].semi_regular"), r.semi_regular));
        report.push(format!("problems[{i}].operator"), Object::operator(problem.operator()));
        report.push(format!("problems[{i}].compatibility"), Object::functionals(p.spec.compatibility()));
        report.push(format!("problems[{i}].exceptional"), Object::functions(p.spec.exceptional()));
        report.push(
            format!("problems[{i}].preimage_of_exceptional"),
            Object::functions(&boundary::preimage_of_exceptional(problem.operator(), p.spec.exceptional().basis())),
        );
    }
    Ok(())
}

fn random_function(rng: &mut ChaCha8Rng) -> ExpPoly {
    let basis = boundary::test_functions();
    basis.iter().fold(ExpPoly::zero(), |acc, f| {
        let c = ExpPoly::from_i64(rng.gen_range(-5i64..=5));
        acc.add(&c.mul(f))
    })
}

/// `u = G f` lies in `𝓑⊥` and `f - T u` lies in `E`.
fn green_consistent(spec: &GreenSpec, f: &ExpPoly, u: &ExpPoly) -> Result<bool, CliError> {
    let satisfies = spec.problem().conditions().iter().all(|b| crate::scalar::Field::is_zero(&b.apply(u)));
    let residual = f.sub(&spec.operator().apply(u));
    let in_e = spec.exceptional().contains(&residual);
    Ok(satisfies && in_e && residual == spec.exceptional_part(f)?)
}

fn bvp_green(b: &BvpPayload, flags: &Flags, report: &mut Report, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let rhs = match &flags.rhs {
        Some(s) => Some(parse_exppoly(s).map_err(|e| CliError::Expr {
            path: "--rhs".into(),
            column: e.column,
            message: e.message,
        })?),
        None => None,
    };
    let mut all_ok = true;
    for (i, p) in b.problems.iter().enumerate() {
        let forcing = match &rhs {
            Some(f) => vec![f.clone()],
            None => p.forcing.clone(),
        };
        report.push(format!("problems[{i}]"), Object::text(p.spec.to_string()));
        for (j, f) in forcing.iter().enumerate() {
            let u = p.spec.green_apply(f)?;
            all_ok &= green_consistent(&p.spec, f, &u)?;
            report.push(format!("problems[{i}].forcing[{j}]"), Object::function(f));
            report.push(format!("problems[{i}].solution[{j}]"), Object::function(&u));
        }
        for _ in 0..4 {
            let f = random_function(rng);
            let u = p.spec.green_apply(&f)?;
            all_ok &= green_consistent(&p.spec, &f, &u)?;
        }
    }
    report.checks.push(Check::flag("self_check", all_ok));
    Ok(())
}

fn pair(b: &BvpPayload, cmd: &str) -> Result<(GreenSpec, GreenSpec), CliError> {
    match b.problems.as_slice() {
        [p1, p2, ..] => Ok((p1.spec.clone(), p2.spec.clone())),
        _ => Err(CliError::Usage(format!("{cmd} needs two problems: G1 then G2"))),
    }
}

fn bvp_rol(b: &BvpPayload, report: &mut Report) -> Result<(), CliError> {
    let (s1, s2) = pair(b, "bvp-rol")?;
    let forward = boundary::rol_check(&s1, &s2)?;
    let reversed = boundary::rol_check(&s2, &s1)?;
    report.verdict = Some(forward.verdict);
    report.checks.push(Check::from_rol("G2G1", &forward));
    report.checks.push(Check::from_rol("G1G2", &reversed));
    Ok(())
}

fn bvp_compose(b: &BvpPayload, report: &mut Report, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let (s1, s2) = pair(b, "bvp-compose")?;
    match boundary::compose(&s1, &s2) {
        Ok(c) => {
            let mut agree = true;
            for _ in 0..4 {
                let f = random_function(rng);
                agree &= c.green_apply(&f)? == boundary::product_apply(&s1, &s2, &f)?;
            }
            report.verdict = Some(true);
            report.checks.push(Check::flag("composed_matches_product", agree));
            report.push("operator", Object::operator(c.operator()));
            report.push("conditions", Object::functionals(&c.problem().condition_span()));
            report.push("exceptional", Object::functions(c.exceptional()));
        }
        Err(BoundaryError::ReverseOrderLawFails { .. }) => {
            report.verdict = Some(false);
            report.checks.push(Check::from_rol("G2G1", &boundary::rol_check(&s1, &s2)?));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// Exceptional span as printed in reports.
pub fn describe_exceptional(e: &FnSpan) -> String {
    match Object::functions(e) {
        Object::Functions { basis } if basis.len() == 1 && basis[0] == "1" => "constants".into(),
        Object::Functions { basis } => format!("span{{{}}}", basis.join(", ")),
        _ => unreachable!(),
    }
}
