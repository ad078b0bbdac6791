//! Shared generators for the property suites. Everything is driven by a
//! `ChaCha8Rng`, so a failing case is reproduced from its seed alone.
#![allow(dead_code)]

use geninv::expcalc::{BoundaryFunctional, DiffOp, ExpPoly};
use geninv::geninv::construct_inner;
use geninv::{Field, QMatrix, RatFuncE, Rational, Subspace};
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2024;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn entry(rng: &mut ChaCha8Rng, sparsity: f64) -> Rational {
    if rng.gen_bool(sparsity) {
        q(0)
    } else {
        q(rng.gen_range(-5..=5))
    }
}

pub fn vector(rng: &mut ChaCha8Rng, n: usize, sparsity: f64) -> Vec<Rational> {
    (0..n).map(|_| entry(rng, sparsity)).collect()
}

/// Random matrix with entries in [-5, 5]. Sparse draws and repeated rows
/// make rank deficiency common.
pub fn matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> QMatrix {
    let sparsity = [0.0, 0.3, 0.6][rng.gen_range(0..3)];
    let mut data: Vec<Vec<Rational>> = (0..rows).map(|_| vector(rng, cols, sparsity)).collect();
    if rows > 1 && rng.gen_bool(0.3) {
        let (i, j) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
        data[i] = data[j].iter().map(|x| -x).collect();
    }
    QMatrix::from_rows_with_cols(data, cols).unwrap()
}

pub fn dim(rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(1..=6)
}

pub fn subspace(rng: &mut ChaCha8Rng, n: usize) -> Subspace {
    let k = rng.gen_range(0..=n);
    let vs: Vec<_> = (0..k).map(|_| vector(rng, n, 0.4)).collect();
    Subspace::new(n, &vs).unwrap()
}

/// Complement of `s` built from random vectors, falling back to the
/// deterministic complement if the draws keep landing inside.
pub fn complement(rng: &mut ChaCha8Rng, s: &Subspace) -> Subspace {
    let n = s.ambient_dim();
    let mut acc = s.clone();
    let mut picked: Vec<Vec<Rational>> = Vec::new();
    for _ in 0..4 * n {
        if acc.is_full() {
            break;
        }
        let v = vector(rng, n, 0.3);
        if !acc.contains(&v) {
            acc = acc.sum(&Subspace::new(n, std::slice::from_ref(&v)).unwrap()).unwrap();
            picked.push(v);
        }
    }
    let c = Subspace::new(n, &picked).unwrap();
    if c.is_complement(s).unwrap() {
        c
    } else {
        s.complement()
    }
}

/// Random subspace of `s`.
pub fn inside(rng: &mut ChaCha8Rng, s: &Subspace) -> Subspace {
    let n = s.ambient_dim();
    let k = rng.gen_range(0..=s.dim());
    let vs: Vec<Vec<Rational>> = (0..k)
        .map(|_| {
            s.basis().iter().fold(vec![q(0); n], |acc, b| {
                let c = entry(rng, 0.3);
                acc.iter().zip(b).map(|(a, x)| a + &c * x).collect()
            })
        })
        .collect();
    Subspace::new(n, &vs).unwrap()
}

/// `(B, E)` with `B ∩ Ker T = 0` and `W = E ⊕ T(B)`.
pub fn outer_pair(rng: &mut ChaCha8Rng, t: &QMatrix) -> (Subspace, Subspace) {
    let ker = Subspace::kernel_of(t);
    let c = complement(rng, &ker);
    let b = inside(rng, &c);
    let e = complement(rng, &b.image(t).unwrap());
    (b, e)
}

/// `(B, E)` with `V = Ker T ⊕ B` and `W = Im T ⊕ E`.
pub fn inner_pair(rng: &mut ChaCha8Rng, t: &QMatrix) -> (Subspace, Subspace) {
    let b = complement(rng, &Subspace::kernel_of(t));
    let e = complement(rng, &Subspace::image_of(t));
    (b, e)
}

/// A random inner inverse of `t`: random defining spaces and a random action
/// on the complement of the image.
pub fn any_inner_inverse(rng: &mut ChaCha8Rng, t: &QMatrix) -> QMatrix {
    let (b, e) = inner_pair(rng, t);
    let action = matrix(rng, t.cols(), e.dim());
    construct_inner(t, &b, &e, Some(&action)).unwrap()
}

/// An inner inverse in `I(T, B, E)`: its action on `E` lands in `Ker T`.
pub fn inner_inverse_in(rng: &mut ChaCha8Rng, t: &QMatrix, b: &Subspace, e: &Subspace) -> QMatrix {
    let ker = Subspace::kernel_of(t);
    let cols: Vec<Vec<Rational>> = (0..e.dim()).map(|_| inside(rng, &ker).basis().first().cloned().unwrap_or(vec![q(0); t.cols()])).collect();
    let action = QMatrix::from_columns(t.cols(), &cols);
    construct_inner(t, b, e, Some(&action)).unwrap()
}

pub fn ratfunc(rng: &mut ChaCha8Rng) -> RatFuncE {
    let num = RatFuncE::from(rng.gen_range(-5i64..=5))
        .add(&RatFuncE::e().mul(&RatFuncE::from(rng.gen_range(-3i64..=3))));
    let den = RatFuncE::e_pow(rng.gen_range(-1..=1)).add(&RatFuncE::from(rng.gen_range(0i64..=2)));
    if den.is_zero() {
        num
    } else {
        num.div(&den)
    }
}

pub fn exppoly(rng: &mut ChaCha8Rng) -> ExpPoly {
    let terms = rng.gen_range(0..=4);
    (0..terms).fold(ExpPoly::zero(), |acc, _| {
        let c = RatFuncE::from(rng.gen_range(-5i64..=5));
        acc.add(&ExpPoly::term(c, rng.gen_range(-2..=2), rng.gen_range(0..=2)))
    })
}

pub fn diffop(rng: &mut ChaCha8Rng) -> DiffOp {
    let order = rng.gen_range(1..=3);
    let roots: Vec<i64> = (0..order).map(|_| rng.gen_range(-2..=2)).collect();
    DiffOp::from_roots(&roots).unwrap()
}

pub fn functional(rng: &mut ChaCha8Rng, max_order: u32) -> BoundaryFunctional {
    let mut beta = BoundaryFunctional::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let b = BoundaryFunctional::eval(rng.gen_range(0..=1), rng.gen_range(0..=max_order)).unwrap();
        beta = beta.add(&b.scale(&RatFuncE::from(rng.gen_range(-3i64..=3))));
    }
    if rng.gen_bool(0.3) {
        beta = beta.add(&BoundaryFunctional::integral(exppoly(rng)));
    }
    beta
}
