//! `G2 G1` from the defining spaces of the factors, without constructing
//! either factor.

use geninv::geninv::{construct_outer, product_implicit};
use geninv::{QMatrix, Subspace};

fn main() {
    let t1 = QMatrix::from_i64(&[&[1, -1, -1, 1], &[0, 2, 2, -2], &[3, 1, 1, -1]]);
    let t2 = QMatrix::from_i64(&[&[1, -2, -1], &[1, 1, 2], &[-1, 5, 4], &[-1, 5, 4]]);
    let b1 = Subspace::from_i64(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let e1 = Subspace::from_i64(3, &[&[0, 0, 1]]);
    let b2 = Subspace::from_i64(3, &[&[1, 0, 0], &[0, 1, 0]]);
    let e2 = Subspace::from_i64(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]);

    let p = product_implicit(&t1, &t2, &b1.orthogonal(), &e1, &b2.orthogonal(), &e2).unwrap();
    println!("𝓑 of the product = {}", p.dual_image);
    println!("image            = {}", p.image());
    println!("kernel           = {}", p.kernel);
    let product = p.realize().unwrap();
    println!("G2G1 = O(T1T2, image, kernel) =\n{product}");

    let explicit = construct_outer(&t2, &b2, &e2).unwrap().dot(&construct_outer(&t1, &b1, &e1).unwrap());
    assert_eq!(product, explicit);
}
