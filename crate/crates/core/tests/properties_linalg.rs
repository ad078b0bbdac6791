mod common;

use common::*;
use geninv::subspace::lemma_intersections;
use geninv::{DualSubspace, Field, QMatrix, RatFuncE, Rational, Subspace};
use proptest::prelude::*;
use rand::Rng;

/// Zassenhaus: row-reduce `[U U; W 0]`; rows with zero left half span `U ∩ W`
/// in their right half.
fn zassenhaus(u: &Subspace, w: &Subspace) -> Subspace {
    let n = u.ambient_dim();
    let mut rows = Vec::new();
    for b in u.basis() {
        rows.push(b.iter().chain(b.iter()).cloned().collect::<Vec<_>>());
    }
    for b in w.basis() {
        rows.push(b.iter().cloned().chain(std::iter::repeat_n(q(0), n)).collect());
    }
    if rows.is_empty() {
        return Subspace::zero(n);
    }
    let r = QMatrix::from_rows_with_cols(rows, 2 * n).unwrap().rref();
    let cap: Vec<Vec<Rational>> = r
        .reduced
        .to_rows()
        .into_iter()
        .filter(|row| row[..n].iter().all(|x| x == &q(0)) && row[n..].iter().any(|x| x != &q(0)))
        .map(|row| row[n..].to_vec())
        .collect();
    Subspace::new(n, &cap).unwrap()
}

fn dual(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> DualSubspace {
    subspace(rng, n).orthogonal()
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn nullspace_and_rank(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (m, n) = (dim(&mut r), dim(&mut r));
        let a = matrix(&mut r, m, n);
        let null = a.nullspace();
        for v in &null {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|x| x == &q(0)));
        }
        prop_assert_eq!(a.rank() + null.len(), n);
    }

    #[test]
    fn rref_is_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (m, n) = (dim(&mut r), dim(&mut r));
        let once = matrix(&mut r, m, n).rref().reduced;
        prop_assert_eq!(once.rref().reduced, once);
    }

    #[test]
    fn solve_reproduces_rhs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (m, n) = (dim(&mut r), dim(&mut r));
        let a = matrix(&mut r, m, n);
        let b = vector(&mut r, m, 0.2);
        match a.solve(&b).unwrap() {
            Some(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
            None => prop_assert!(!Subspace::image_of(&a).contains(&b)),
        }
        // Right-hand sides in the image are always solvable.
        let x0 = vector(&mut r, n, 0.2);
        let b0 = a.mul_vec(&x0).unwrap();
        let x = a.solve(&b0).unwrap();
        prop_assert!(x.is_some());
        prop_assert_eq!(a.mul_vec(&x.unwrap()).unwrap(), b0);
    }

    #[test]
    fn rational_field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let den = |r: &mut rand_chacha::ChaCha8Rng| q(r.gen_range(1..=7));
        let a = entry(&mut r, 0.1) / den(&mut r);
        let b = entry(&mut r, 0.1) / den(&mut r);
        let c = entry(&mut r, 0.1) / den(&mut r);
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn ratfunc_field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (ratfunc(&mut r), ratfunc(&mut r), ratfunc(&mut r));
        field_axioms(&a, &b, &c)?;
        prop_assert_eq!(RatFuncE::e().mul(&RatFuncE::e_pow(-1)), RatFuncE::one());
    }

    #[test]
    fn double_orthogonal_and_order_reversal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = dim(&mut r);
        let u = subspace(&mut r, n);
        let w = u.sum(&subspace(&mut r, n)).unwrap();
        prop_assert_eq!(u.orthogonal().orthogonal(), u.clone());
        prop_assert!(u.orthogonal().includes(&w.orthogonal()).unwrap());
        let b = dual(&mut r, n);
        prop_assert_eq!(b.orthogonal().orthogonal(), b);
        prop_assert_eq!(u.dim() + u.orthogonal().dim(), n);
    }

    #[test]
    fn orthogonal_swaps_sum_and_intersection(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = dim(&mut r);
        let (u1, u2) = (subspace(&mut r, n), subspace(&mut r, n));
        prop_assert_eq!(u1.sum(&u2).unwrap().orthogonal(), u1.orthogonal().intersect(&u2.orthogonal()).unwrap());
        prop_assert_eq!(u1.intersect(&u2).unwrap().orthogonal(), u1.orthogonal().sum(&u2.orthogonal()).unwrap());
        let (b1, b2) = (dual(&mut r, n), dual(&mut r, n));
        prop_assert_eq!(b1.sum(&b2).unwrap().orthogonal(), b1.orthogonal().intersect(&b2.orthogonal()).unwrap());
        prop_assert_eq!(b1.intersect(&b2).unwrap().orthogonal(), b1.orthogonal().sum(&b2.orthogonal()).unwrap());
    }

    #[test]
    fn intersection_matches_zassenhaus(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = dim(&mut r);
        let (u, w) = (subspace(&mut r, n), subspace(&mut r, n));
        prop_assert_eq!(u.intersect(&w).unwrap(), zassenhaus(&u, &w));
        prop_assert_eq!(u.dim() + w.dim(), u.sum(&w).unwrap().dim() + u.intersect(&w).unwrap().dim());
    }

    #[test]
    fn direct_sums_dualize(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = dim(&mut r);
        let u1 = subspace(&mut r, n);
        let u2 = complement(&mut r, &u1);
        prop_assert!(u1.is_complement(&u2).unwrap());
        prop_assert!(u1.orthogonal().is_complement(&u2.orthogonal()).unwrap());
    }

    #[test]
    fn modular_law(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = dim(&mut r);
        let u3 = subspace(&mut r, n);
        let u1 = inside(&mut r, &u3);
        let u2 = subspace(&mut r, n);
        prop_assert_eq!(
            u1.sum(&u2.intersect(&u3).unwrap()).unwrap(),
            u1.sum(&u2).unwrap().intersect(&u3).unwrap()
        );
    }

    #[test]
    fn sum_squeezed_between_direct_parts(seed in any::<u64>()) {
        // V = V1 + V2 = V3 ⊕ V4 with V1 ≤ V3 and V2 ≤ V4 forces V1 = V3, V2 = V4.
        let mut r = rng(seed);
        let n = dim(&mut r);
        let v3 = subspace(&mut r, n);
        let v4 = complement(&mut r, &v3);
        let v1 = if r.gen_bool(0.5) { v3.clone() } else { inside(&mut r, &v3) };
        let v2 = if r.gen_bool(0.5) { v4.clone() } else { inside(&mut r, &v4) };
        if v1.sum(&v2).unwrap().is_full() {
            prop_assert_eq!(v1, v3);
            prop_assert_eq!(v2, v4);
        } else {
            prop_assert!(v1 != v3 || v2 != v4);
        }
    }

    #[test]
    fn lemma_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = dim(&mut r);
        let u = subspace(&mut r, n);
        let b = dual(&mut r, n);
        let (u_cap, b_cap) = lemma_intersections(n, b.basis(), u.basis()).unwrap();
        prop_assert_eq!(u_cap, u.intersect(&b.orthogonal()).unwrap());
        prop_assert_eq!(b_cap, b.intersect(&u.orthogonal()).unwrap());
    }

    #[test]
    fn transpose_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (m, n) = (dim(&mut r), dim(&mut r));
        let a = matrix(&mut r, m, n);
        let at = a.transpose();
        // (Im A)⊥ = Ker Aᵀ and Im Aᵀ = (Ker A)⊥, in covector form.
        let ker_at = Subspace::kernel_of(&at).basis().to_vec();
        prop_assert_eq!(Subspace::image_of(&a).orthogonal(), DualSubspace::new(m, &ker_at).unwrap());
        let im_at = Subspace::image_of(&at).basis().to_vec();
        prop_assert_eq!(Subspace::kernel_of(&a).orthogonal(), DualSubspace::new(n, &im_at).unwrap());
        let v1 = subspace(&mut r, n);
        prop_assert_eq!(v1.image(&a).unwrap().orthogonal(), v1.orthogonal().transpose_preimage(&a).unwrap());
        let w1 = subspace(&mut r, m);
        prop_assert_eq!(w1.orthogonal().transpose_image(&a).unwrap(), w1.preimage(&a).unwrap().orthogonal());
    }
}

fn field_axioms<F: Field>(a: &F, b: &F, c: &F) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert_eq!(a.add(b), b.add(a));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.sub(a), F::zero());
    if !a.is_zero() {
        prop_assert_eq!(a.mul(&a.inv().unwrap()), F::one());
    } else {
        prop_assert!(a.inv().is_none());
    }
    Ok(())
}
