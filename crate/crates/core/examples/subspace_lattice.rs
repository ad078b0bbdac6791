//! Sums, intersections and orthogonals of subspaces of Q^4, plus the
//! evaluation-matrix shortcut for `U ∩ 𝓑⊥` and `𝓑 ∩ U⊥`.

use geninv::subspace::lemma_intersections;
use geninv::{DualSubspace, Subspace};

type S = Subspace;
type D = DualSubspace;

fn main() {
    let u = S::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let w = S::from_i64(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
    let sum = u.sum(&w).unwrap();
    let cap = u.intersect(&w).unwrap();
    println!("U + W = {sum}");
    println!("U ∩ W = {cap}");
    assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());

    // Orthogonals swap sums and intersections.
    let lhs = sum.orthogonal();
    let rhs = u.orthogonal().intersect(&w.orthogonal()).unwrap();
    println!("(U + W)⊥ = {lhs}");
    assert_eq!(lhs, rhs);
    assert_eq!(u.orthogonal().orthogonal(), u);

    let beta = D::from_i64(4, &[&[0, 0, 1, 0], &[1, -1, 0, 0]]);
    let (u_cap, beta_cap) = lemma_intersections(4, beta.basis(), w.basis()).unwrap();
    println!("W ∩ 𝓑⊥ = {u_cap}");
    println!("𝓑 ∩ W⊥ = {beta_cap}");
    assert_eq!(u_cap, w.intersect(&beta.orthogonal()).unwrap());
    assert_eq!(beta_cap, beta.intersect(&w.orthogonal()).unwrap());
}
