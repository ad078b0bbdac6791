//! Deciding whether `G2 G1` is an outer or inner inverse of `T1 T2`, with the
//! subspace inclusions that witness each condition.

use geninv::geninv::{fredholm_rol_outer_check, rol_all_inner, rol_inner_check, rol_outer_check};
use geninv::{QMatrix, Subspace};

fn main() {
    let t1 = QMatrix::from_i64(&[&[1, -1, -1, 1], &[0, 2, 2, -2], &[3, 1, 1, -1]]);
    let t2 = QMatrix::from_i64(&[&[1, -2, -1], &[1, 1, 2], &[-1, 5, 4], &[-1, 5, 4]]);
    let b1 = Subspace::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let e1 = Subspace::from_i64(3, &[&[0, 0, 1]]);
    let b2 = Subspace::from_i64(3, &[&[1, 0, 0], &[0, 1, 0]]);
    let e2 = Subspace::from_i64(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]);

    let outer = rol_outer_check(&t1, &t2, &b1, &e1, &b2, &e2).unwrap();
    println!("outer: {} {:?}", outer.verdict, outer.conditions);
    for w in &outer.witnesses {
        println!("  ({}) {}\n      within {}", w.label, w.lesser, w.greater);
    }
    assert!(outer.verdict && outer.consistent);

    let inner = rol_inner_check(&t1, &t2, &b1, &e2).unwrap();
    println!("inner: {} {:?}", inner.verdict, inner.conditions);
    assert!(!inner.verdict && inner.consistent);
    println!("inner for every pair: {}", rol_all_inner(&t1, &t2).unwrap());

    // The same outer verdict from the dual description of B1 and the
    // compatibility space of T2, without building G1 or G2.
    let c2 = b2.image(&t2).unwrap().orthogonal();
    let k1 = e1.preimage(&t1).unwrap();
    let dual = fredholm_rol_outer_check(&c2, &k1, &b1.orthogonal(), &e2, &b1).unwrap();
    println!("dual-side check: {}", dual.verdict);
    assert_eq!(dual.verdict, outer.verdict);
}
