//! Reverse order law for two generalized Green's operators and the boundary
//! problem of their product.

use geninv::boundary::{compose, product_apply, rol_check, test_functions, BoundaryProblem, GreenSpec};
use geninv::expcalc::{BoundaryFunctional, DiffOp, ExpPoly};

fn spec(op: DiffOp, exceptional: ExpPoly) -> GreenSpec {
    let conditions = vec![
        BoundaryFunctional::eval(0, 1).unwrap(),
        BoundaryFunctional::eval(1, 1).unwrap(),
        BoundaryFunctional::eval(1, 0).unwrap(),
    ];
    GreenSpec::new(BoundaryProblem::new(op, conditions).unwrap(), vec![exceptional]).unwrap()
}

fn main() {
    let g1 = spec(DiffOp::d_pow(2).unwrap(), ExpPoly::from_i64(1));
    let g2 = spec(DiffOp::from_i64(&[-1, 0, 1]).unwrap(), ExpPoly::x());
    println!("G1: {g1}\nG2: {g2}");
    println!("compatibility of G2: {}", g2.compatibility());

    let forward = rol_check(&g1, &g2).unwrap();
    let backward = rol_check(&g2, &g1).unwrap();
    println!("G2G1 outer inverse of T1T2: {} {:?}", forward.verdict, forward.conditions);
    println!("G1G2 outer inverse of T2T1: {} {:?}", backward.verdict, backward.conditions);
    assert!(forward.verdict && !backward.verdict);

    let c = compose(&g1, &g2).unwrap();
    println!("G2G1 = {c}");
    for b in c.problem().conditions() {
        println!("  {b}");
    }
    for f in test_functions() {
        assert_eq!(c.green_apply(&f).unwrap(), product_apply(&g1, &g2, &f).unwrap());
    }
}
