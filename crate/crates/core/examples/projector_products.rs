//! When is the product of two projectors a projector, and when do they
//! commute?

use geninv::geninv::{projector, projector_product_classify};
use geninv::Subspace;

type S = Subspace;

fn main() {
    let p = projector(&S::from_i64(3, &[&[1, 0, 0], &[0, 1, 0]]), &S::from_i64(3, &[&[0, 0, 1]])).unwrap();
    // Rank one onto (1, 0, 1) along span{(1, 0, -1), e2}: PQ is not idempotent.
    let skew = projector(&S::from_i64(3, &[&[1, 0, 1]]), &S::from_i64(3, &[&[1, 0, -1], &[0, 1, 0]])).unwrap();
    // Onto e1 along span{e2, e3}: commutes with P.
    let q = projector(&S::from_i64(3, &[&[1, 0, 0]]), &S::from_i64(3, &[&[0, 1, 0], &[0, 0, 1]])).unwrap();

    for (name, a, b) in [("P·S", &p, &skew), ("P·Q", &p, &q)] {
        let r = projector_product_classify(a, b).unwrap();
        println!(
            "{name}: projector {} conditions {:?} commute {} (direct {})",
            r.is_projector, r.conditions, r.commute, r.commute_direct
        );
        assert_eq!(r.is_projector, r.conditions.ii);
        assert_eq!(r.commute, r.commute_direct);
    }
    assert!(!projector_product_classify(&p, &skew).unwrap().is_projector);
    assert!(projector_product_classify(&p, &q).unwrap().commute);
    // The complementary projector and the transpose are projectors too.
    assert!(p.complementary().matrix().is_idempotent());
    assert!(p.transpose().matrix().is_idempotent());
}
