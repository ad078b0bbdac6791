//! Reflexive inverses whose reverse-order product is again reflexive, for
//! any chainable pair.

use geninv::geninv::{rol_construct, rol_inner_check, rol_outer_check, verify};
use geninv::QMatrix;

fn main() {
    let t1 = QMatrix::from_i64(&[&[1, -1, -1, 1], &[0, 2, 2, -2], &[3, 1, 1, -1]]);
    let t2 = QMatrix::from_i64(&[&[1, -2, -1], &[1, 1, 2], &[-1, 5, 4], &[-1, 5, 4]]);
    let c = rol_construct(&t1, &t2).unwrap();
    println!("V1 = {}\nV2 = {}\nV3 = {}", c.v1, c.v2, c.v3);
    println!("B1 = {}, E1 = {}", c.b1, c.e1);
    println!("B2 = {}, E2 = {}", c.b2, c.e2);

    let (g1, g2) = c.inverses(&t1, &t2).unwrap();
    let v = verify(&t1.dot(&t2), &g2.dot(&g1)).unwrap();
    println!("G2G1 reflexive for T1T2: {}", v.reflexive);
    assert!(v.reflexive);
    assert!(rol_outer_check(&t1, &t2, &c.b1, &c.e1, &c.b2, &c.e2).unwrap().verdict);
    assert!(rol_inner_check(&t1, &t2, &c.b1, &c.e2).unwrap().verdict);
}
