//! Generalized inverses from prescribed image and kernel, checked against
//! the defining identities.

use geninv::geninv::{construct_inner, construct_reflexive, verify, DefiningImage, GenInvKind, GenInvSpec};
use geninv::{DualSubspace, QMatrix, Subspace};

fn main() {
    let t1 = QMatrix::from_i64(&[&[1, -1, -1, 1], &[0, 2, 2, -2], &[3, 1, 1, -1]]);

    // Image given through its orthogonal: 𝓑 = span{[0, 0, 1, 0], [0, 0, 0, 1]}.
    let spec = GenInvSpec {
        t: t1.clone(),
        image: DefiningImage::Orthogonal(DualSubspace::from_i64(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])),
        kernel: Subspace::from_i64(3, &[&[0, 0, 1]]),
        kind: GenInvKind::Outer,
        inner_action: None,
    };
    let g1 = spec.build().unwrap();
    println!("G1 = O(T1, B1, E1):\n{g1}");
    let v = verify(&t1, &g1).unwrap();
    println!("inner {} outer {} reflexive {}", v.inner, v.outer, v.reflexive);
    assert!(v.outer && v.seven_way.agree);

    // Reflexive inverses need B ⊕ Ker T and E ⊕ Im T.
    let b = Subspace::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let e = Subspace::image_of(&t1).complement();
    let g = construct_reflexive(&t1, &b, &e).unwrap();
    println!("reflexive inverse:\n{g}");
    assert!(verify(&t1, &g).unwrap().reflexive);

    // An inner inverse that is not outer: send E somewhere outside B.
    let action = QMatrix::from_i64(&[&[0], &[0], &[1], &[0]]);
    let gi = construct_inner(&t1, &b, &e, Some(&action)).unwrap();
    let vi = verify(&t1, &gi).unwrap();
    println!("inner-only inverse: inner {} outer {}", vi.inner, vi.outer);
    assert!(vi.inner && !vi.outer);
}
