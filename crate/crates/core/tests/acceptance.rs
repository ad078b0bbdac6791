//! Acceptance run: one line per criterion with its verdict and wall time.
//! Built without the libtest harness so the lines always reach the output.

mod common;

use std::time::{Duration, Instant};

use common::*;
use geninv::boundary::{compose, preimage_of_exceptional, rol_check, BoundaryProblem, FnSpan, FunctionalSpan, GreenSpec};
use geninv::cli::{parse_diffop, parse_exppoly, parse_functional};
use geninv::expcalc::ExpPoly;
use geninv::geninv::{
    construct_outer, fredholm_rol_outer_check, product_implicit, projector, projector_product_classify,
    rol_all_inner, rol_construct, rol_inner_check, rol_outer_check, verify, GenInvError, SpaceWitness,
};
use geninv::scalar::ratio;
use geninv::subspace::lemma_intersections;
use geninv::{DualSubspace, QMatrix, Subspace};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---- criterion 1 ----

fn matrix_pair() -> Outcome {
    let t1 = QMatrix::from_i64(&[&[1, -1, -1, 1], &[0, 2, 2, -2], &[3, 1, 1, -1]]);
    let t2 = QMatrix::from_i64(&[&[1, -2, -1], &[1, 1, 2], &[-1, 5, 4], &[-1, 5, 4]]);
    let b1 = Subspace::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let e1 = Subspace::from_i64(3, &[&[0, 0, 1]]);
    let b2 = Subspace::from_i64(3, &[&[1, 0, 0], &[0, 1, 0]]);
    let e2 = Subspace::from_i64(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]);

    let outer = ok(rol_outer_check(&t1, &t2, &b1, &e1, &b2, &e2))?;
    ensure!(outer.verdict, "outer verdict false");
    let w = outer.witness("iii").ok_or("no witness for (iii)")?;
    let big = Subspace::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1]]);
    ensure!(w.lesser == SpaceWitness::Primal(b1.clone()), "(iii) lesser side is {}", w.lesser);
    ensure!(w.greater == SpaceWitness::Primal(big), "(iii) greater side is {}", w.greater);

    ensure!(!ok(rol_inner_check(&t1, &t2, &b1, &e2))?.verdict, "inner verdict true");

    let p = ok(product_implicit(&t1, &t2, &b1.orthogonal(), &e1, &b2.orthogonal(), &e2))?;
    ensure!(p.dual_image == DualSubspace::from_i64(3, &[&[0, 0, 1], &[-1, 5, 4]]), "dual image {}", p.dual_image);
    ensure!(p.kernel == Subspace::from_i64(3, &[&[1, 0, 0], &[0, 0, 1]]), "kernel {}", p.kernel);

    let g = ok(construct_outer(
        &t1.dot(&t2),
        &Subspace::from_i64(3, &[&[5, 1, 0]]),
        &Subspace::from_i64(3, &[&[1, 0, 0], &[0, 0, 1]]),
    ))?;
    let z = ratio(0, 1);
    let expected = ok(QMatrix::from_rows(vec![
        vec![z.clone(), ratio(5, 12), z.clone()],
        vec![z.clone(), ratio(1, 12), z.clone()],
        vec![z.clone(), z.clone(), z],
    ]))?;
    ensure!(g == expected, "G = {:?}", g.to_rows());
    ensure!(ok(p.realize())? == g, "implicit product differs from G");
    Ok(())
}

// ---- criteria 2 and 3 ----

fn problem(t: &str, conds: &[&str]) -> Result<BoundaryProblem, String> {
    let conds = conds.iter().map(|s| ok(parse_functional(s))).collect::<Result<Vec<_>, _>>()?;
    ok(BoundaryProblem::new(ok(parse_diffop(t))?, conds))
}

fn fns(xs: &[&str]) -> Result<FnSpan, String> {
    Ok(FnSpan::new(xs.iter().map(|s| ok(parse_exppoly(s))).collect::<Result<_, _>>()?))
}

fn fls(xs: &[&str]) -> Result<FunctionalSpan, String> {
    Ok(FunctionalSpan::new(xs.iter().map(|s| ok(parse_functional(s))).collect::<Result<_, _>>()?))
}

const BC: &[&str] = &["E[0]D", "E[1]D", "E[1]"];

fn boundary_pair() -> Outcome {
    let p1 = problem("D^2", BC)?;
    let p2 = problem("D^2 - 1", BC)?;
    ensure!(ok(p1.compatibility())? == fls(&["int"])?, "compatibility of the first problem");
    ensure!(ok(p2.compatibility())? == fls(&["int(exp(x) + exp(-x))"])?, "compatibility of the second problem");
    let (x1, x2) = (vec![ExpPoly::from_i64(1)], vec![ExpPoly::x()]);
    ensure!(preimage_of_exceptional(p1.operator(), &x1) == fns(&["1", "x", "x^2"])?, "first preimage");
    ensure!(preimage_of_exceptional(p2.operator(), &x2) == fns(&["x", "exp(x)", "exp(-x)"])?, "second preimage");

    let s1 = ok(GreenSpec::new(p1, x1))?;
    let s2 = ok(GreenSpec::new(p2, x2))?;
    let forward = ok(rol_check(&s1, &s2))?;
    let backward = ok(rol_check(&s2, &s1))?;
    ensure!(forward.verdict && forward.consistent, "G2 G1 rejected");
    ensure!(!backward.verdict && backward.consistent, "G1 G2 accepted");

    let c = ok(compose(&s1, &s2))?;
    ensure!(c.operator() == &ok(parse_diffop("D^4 - D^2"))?, "operator {}", c.operator());
    let printed = fls(&["E[0]D", "E[1]D", "E[1]", "E[0]D^3 - E[1]D^2", "E[1]D^3 - E[1]D^2"])?;
    ensure!(printed.dim() == 5, "printed conditions are dependent");
    ensure!(c.problem().condition_span() == printed, "conditions {:?}", c.problem().condition_span());
    ensure!(c.exceptional() == &fns(&["1"])?, "exceptional {:?}", c.exceptional());
    Ok(())
}

/// `x∫₀ˣf − ∫₀ˣξf − ½(x²+1)∫₀¹f + ∫₀¹ξf`.
fn closed_form(f: &ExpPoly) -> ExpPoly {
    let x = ExpPoly::x();
    let int_f = f.integrate_0x();
    let int_xf = x.mul(f).integrate_0x();
    let half = geninv::RatFuncE::from(ratio(1, 2));
    let squares = x.mul(&x).add(&ExpPoly::from_i64(1)).scale(&half);
    x.mul(&int_f)
        .sub(&int_xf)
        .sub(&squares.scale(&f.integral_01()))
        .add(&ExpPoly::constant(x.mul(f).integral_01()))
}

fn green_formula() -> Outcome {
    let s = ok(GreenSpec::new(problem("D^2", BC)?, vec![ExpPoly::from_i64(1)]))?;
    for src in ["1", "x", "x^2", "exp(x)"] {
        let f = ok(parse_exppoly(src))?;
        let u = ok(s.green_apply(&f))?;
        ensure!(u == closed_form(&f), "f = {src}: {u} vs {}", closed_form(&f));
    }
    Ok(())
}

// ---- criterion 4 ----

const CASES: u64 = 200;

fn pair(r: &mut ChaCha8Rng) -> (QMatrix, QMatrix) {
    let (m, n, p) = (dim(r), dim(r), dim(r));
    (matrix(r, m, n), matrix(r, n, p))
}

fn random_projector(r: &mut ChaCha8Rng, n: usize) -> geninv::geninv::Projector {
    let im = subspace(r, n);
    let ker = complement(r, &im);
    projector(&im, &ker).unwrap()
}

fn projector_products(r: &mut ChaCha8Rng) -> Outcome {
    let n = dim(r);
    let p = random_projector(r, n);
    let q = if r.gen_bool(0.5) {
        let im = inside(r, p.image()).sum(&inside(r, p.kernel())).unwrap();
        projector(&im, &complement(r, &im)).unwrap()
    } else {
        random_projector(r, n)
    };
    let rep = ok(projector_product_classify(&p, &q))?;
    ensure!(rep.conditions.consistent(), "{:?}", rep.conditions);
    ensure!(rep.conditions.ii == rep.is_projector, "condition (ii) vs PQ idempotent");
    ensure!(rep.commute == rep.commute_direct, "commutation");
    Ok(())
}

fn outer_law(r: &mut ChaCha8Rng) -> Outcome {
    let (t1, t2) = pair(r);
    let (b1, e1) = outer_pair(r, &t1);
    let (b2, e2) = outer_pair(r, &t2);
    let rep = ok(rol_outer_check(&t1, &t2, &b1, &e1, &b2, &e2))?;
    ensure!(rep.consistent, "{:?}", rep.conditions);
    let g = ok(construct_outer(&t2, &b2, &e2))?.dot(&ok(construct_outer(&t1, &b1, &e1))?);
    ensure!(rep.verdict == ok(verify(&t1.dot(&t2), &g))?.outer, "outer verdict vs matrices");
    let c2 = ok(b2.image(&t2))?.orthogonal();
    let k1 = ok(e1.preimage(&t1))?;
    let dual = ok(fredholm_rol_outer_check(&c2, &k1, &b1.orthogonal(), &e2, &b1))?;
    ensure!(dual.verdict == rep.verdict, "orthogonal form disagrees");
    Ok(())
}

fn inner_law(r: &mut ChaCha8Rng) -> Outcome {
    let (t1, t2) = pair(r);
    let (b1, e1) = inner_pair(r, &t1);
    let (b2, e2) = inner_pair(r, &t2);
    let rep = ok(rol_inner_check(&t1, &t2, &b1, &e2))?;
    ensure!(rep.consistent, "{:?}", rep.conditions);
    let g1 = inner_inverse_in(r, &t1, &b1, &e1);
    let g2 = inner_inverse_in(r, &t2, &b2, &e2);
    ensure!(rep.verdict == ok(verify(&t1.dot(&t2), &g2.dot(&g1)))?.inner, "inner verdict vs matrices");
    Ok(())
}

fn implicit_product(r: &mut ChaCha8Rng) -> Outcome {
    let (t1, t2) = pair(r);
    let (b1, e1) = outer_pair(r, &t1);
    let (b2, e2) = outer_pair(r, &t2);
    let verdict = ok(rol_outer_check(&t1, &t2, &b1, &e1, &b2, &e2))?.verdict;
    match product_implicit(&t1, &t2, &b1.orthogonal(), &e1, &b2.orthogonal(), &e2) {
        Ok(p) => {
            ensure!(verdict, "implicit product built for a failing pair");
            let g = ok(construct_outer(&t2, &b2, &e2))?.dot(&ok(construct_outer(&t1, &b1, &e1))?);
            ensure!(ok(p.realize())? == g, "implicit vs explicit");
        }
        Err(GenInvError::ReverseOrderLawFails { .. }) => ensure!(!verdict, "implicit product refused"),
        Err(e) => return Err(e.to_string()),
    }
    Ok(())
}

fn construction(r: &mut ChaCha8Rng) -> Outcome {
    let (t1, t2) = pair(r);
    let c = ok(rol_construct(&t1, &t2))?;
    ensure!(ok(rol_outer_check(&t1, &t2, &c.b1, &c.e1, &c.b2, &c.e2))?.verdict, "outer law");
    ensure!(ok(rol_inner_check(&t1, &t2, &c.b1, &c.e2))?.verdict, "inner law");
    let (g1, g2) = ok(c.inverses(&t1, &t2))?;
    ensure!(ok(verify(&t1.dot(&t2), &g2.dot(&g1)))?.reflexive, "product not reflexive");
    Ok(())
}

fn seven_way(r: &mut ChaCha8Rng) -> Outcome {
    let (m, n) = (dim(r), dim(r));
    let t = matrix(r, m, n);
    let (b, e) = outer_pair(r, &t);
    let v = ok(verify(&t, &ok(construct_outer(&t, &b, &e))?))?;
    ensure!(v.outer && v.seven_way.statements.iter().all(|s| *s), "constructed outer inverse");
    let h = matrix(r, n, m);
    let vh = ok(verify(&t, &h))?;
    ensure!(vh.seven_way.statements.iter().all(|s| *s == vh.outer), "arbitrary G");
    Ok(())
}

fn product_criterion(r: &mut ChaCha8Rng) -> Outcome {
    let (t1, t2) = pair(r);
    let (b1, e1) = outer_pair(r, &t1);
    let (b2, e2) = outer_pair(r, &t2);
    let g1 = ok(construct_outer(&t1, &b1, &e1))?;
    let g2 = ok(construct_outer(&t2, &b2, &e2))?;
    let qp = t2.dot(&g2).dot(&g1.dot(&t1));
    ensure!(ok(verify(&t1.dot(&t2), &g2.dot(&g1)))?.outer == qp.is_idempotent(), "outer direction");
    let h1 = any_inner_inverse(r, &t1);
    let h2 = any_inner_inverse(r, &t2);
    let pq = h1.dot(&t1).dot(&t2.dot(&h2));
    ensure!(ok(verify(&t1.dot(&t2), &h2.dot(&h1)))?.inner == pq.is_idempotent(), "inner direction");
    Ok(())
}

fn compositions(r: &mut ChaCha8Rng) -> Outcome {
    let (m, n) = (dim(r), dim(r));
    let t = matrix(r, m, n);
    let q = random_projector(r, n);
    let part = ok(Subspace::kernel_of(&t).intersect(q.image()))?;
    ensure!(Subspace::kernel_of(&t.dot(q.matrix())) == ok(part.sum(q.kernel()))?, "Ker TQ");
    let p = random_projector(r, m);
    let rhs = ok(ok(Subspace::image_of(&t).sum(p.kernel()))?.intersect(p.image()))?;
    ensure!(Subspace::image_of(&p.matrix().dot(&t)) == rhs, "Im PT");
    Ok(())
}

fn duality(r: &mut ChaCha8Rng) -> Outcome {
    let n = dim(r);
    let (u1, u2) = (subspace(r, n), subspace(r, n));
    ensure!(u1.orthogonal().orthogonal() == u1, "double orthogonal");
    ensure!(ok(u1.sum(&u2))?.orthogonal() == ok(u1.orthogonal().intersect(&u2.orthogonal()))?, "sum");
    ensure!(ok(u1.intersect(&u2))?.orthogonal() == ok(u1.orthogonal().sum(&u2.orthogonal()))?, "intersection");
    let b = subspace(r, n).orthogonal();
    let (u_cap, b_cap) = ok(lemma_intersections(n, b.basis(), u1.basis()))?;
    ensure!(u_cap == ok(u1.intersect(&b.orthogonal()))?, "evaluation lemma, primal side");
    ensure!(b_cap == ok(b.intersect(&u1.orthogonal()))?, "evaluation lemma, dual side");
    let m = dim(r);
    let a = matrix(r, m, n);
    ensure!(ok(u1.image(&a))?.orthogonal() == ok(u1.orthogonal().transpose_preimage(&a))?, "image vs transpose");
    let w = subspace(r, m);
    ensure!(ok(w.orthogonal().transpose_image(&a))? == ok(w.preimage(&a))?.orthogonal(), "preimage vs transpose");
    Ok(())
}

fn transposed_kinds(r: &mut ChaCha8Rng) -> Outcome {
    let n = dim(r);
    let p = random_projector(r, n);
    let q = random_projector(r, n);
    let rep = ok(projector_product_classify(&p, &q))?;
    let rt = ok(projector_product_classify(&q.transpose(), &p.transpose()))?;
    ensure!(rep.conditions.iv == rt.conditions.ii, "(iv) is the transpose of (ii)");
    ensure!(rep.is_projector == rt.is_projector, "transpose keeps idempotence");
    let (m, k) = (dim(r), dim(r));
    let t = matrix(r, m, k);
    let g = any_inner_inverse(r, &t);
    ensure!(ok(verify(&t.transpose(), &g.transpose()))?.inner, "transposed inner inverse");
    Ok(())
}

type Family = (&'static str, fn(&mut ChaCha8Rng) -> Outcome);

const FAMILIES: &[Family] = &[
    ("projector products", projector_products),
    ("outer law", outer_law),
    ("inner law", inner_law),
    ("implicit product", implicit_product),
    ("construction", construction),
    ("seven statements", seven_way),
    ("product criterion", product_criterion),
    ("compositions", compositions),
    ("duality", duality),
    ("transposes", transposed_kinds),
];

fn property_families() -> Outcome {
    for (i, (name, family)) in FAMILIES.iter().enumerate() {
        for case in 0..CASES {
            let seed = SEED ^ ((i as u64) << 32) ^ case;
            family(&mut rng(seed)).map_err(|e| format!("{name}, seed {seed:#x}: {e}"))?;
        }
    }
    Ok(())
}

// ---- criterion 5 ----

/// Pairs biased so that roughly a third have `Ker T₁ ≤ Im T₂` or `T₁T₂ = 0`.
fn law_instance(r: &mut ChaCha8Rng) -> (QMatrix, QMatrix) {
    // wide T1 so that Ker T1 is usually nontrivial
    let m = r.gen_range(1..=5);
    let (n, p) = (r.gen_range(m + 1..=6), dim(r));
    let t1 = matrix(r, m, n);
    match r.gen_range(0..3) {
        0 => {
            let ker = Subspace::kernel_of(&t1);
            let mut cols: Vec<_> = ker.basis().to_vec();
            while cols.len() < p.max(ker.dim()) {
                cols.push(vector(r, n, 0.3));
            }
            (t1, QMatrix::from_columns(n, &cols))
        }
        _ => (t1, matrix(r, n, p)),
    }
}

fn all_inner_statistics() -> Result<String, String> {
    let (mut held, mut failed) = (0, 0);
    for case in 0..50u64 {
        let mut r = rng(SEED.wrapping_add(case));
        let (t1, t2) = law_instance(&mut r);
        let product = t1.dot(&t2);
        let predicate = ok(rol_all_inner(&t1, &t2))?;
        let sample = |r: &mut ChaCha8Rng| -> Result<bool, String> {
            let g1 = any_inner_inverse(r, &t1);
            let g2 = any_inner_inverse(r, &t2);
            Ok(ok(verify(&product, &g2.dot(&g1)))?.inner)
        };
        if predicate {
            held += 1;
            for _ in 0..50 {
                ensure!(sample(&mut r)?, "instance {case}: predicate true but a pair violates the law");
            }
        } else {
            failed += 1;
            let mut found = false;
            for _ in 0..200 {
                if !sample(&mut r)? {
                    found = true;
                    break;
                }
            }
            ensure!(found, "instance {case}: predicate false but no violator in 200 samples");
        }
    }
    ensure!(held > 0 && failed > 0, "only one predicate value exercised ({held} true, {failed} false)");
    Ok(format!("{held} true, {failed} false"))
}

// ---- driver ----

fn timed<T>(f: impl FnOnce() -> Result<T, String>) -> (Result<T, String>, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main() {
    type Run = Box<dyn FnOnce() -> Result<String, String>>;
    let runs: Vec<(u32, Duration, Run)> = vec![
        (1, Duration::from_secs(1), Box::new(|| matrix_pair().map(|_| String::new()))),
        (2, Duration::from_secs(5), Box::new(|| boundary_pair().map(|_| String::new()))),
        (3, Duration::from_secs(1), Box::new(|| green_formula().map(|_| String::new()))),
        (4, Duration::from_secs(60), Box::new(|| property_families().map(|_| format!("{} families x {CASES}", FAMILIES.len())))),
        (5, Duration::from_secs(30), Box::new(all_inner_statistics)),
    ];
    let mut failures = Vec::new();
    for (n, limit, run) in runs {
        let (out, took) = timed(run);
        let ms = took.as_secs_f64() * 1000.0;
        let verdict = match &out {
            Ok(_) if took <= limit => "PASS",
            _ => "FAIL",
        };
        let detail = match &out {
            Ok(s) if s.is_empty() => String::new(),
            Ok(s) => format!(", {s}"),
            Err(e) => format!(", {e}"),
        };
        let line = format!("criterion {n}: {verdict} ({ms:.1} ms, limit {} s{detail})", limit.as_secs());
        println!("{line}");
        if verdict == "FAIL" {
            failures.push(line);
        }
    }
    if !failures.is_empty() {
        eprintln!("{} acceptance criteria failed", failures.len());
        std::process::exit(1);
    }
}
