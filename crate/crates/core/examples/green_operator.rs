//! Generalized Green's operator of `u'' = f`, `u'(0) = u'(1) = u(1) = 0`,
//! which is solvable only for `∫₀¹ f = 0`. Forcing functions are first
//! projected along the constants.

use geninv::boundary::{BoundaryProblem, GreenSpec};
use geninv::expcalc::{BoundaryFunctional, DiffOp, ExpPoly};
use geninv::{RatFuncE, Rational};

fn closed_form(f: &ExpPoly) -> ExpPoly {
    let x = ExpPoly::x();
    let half = RatFuncE::from(Rational::new(1.into(), 2.into()));
    x.mul(&f.integrate_0x())
        .sub(&x.mul(f).integrate_0x())
        .sub(&x.pow(2).add(&ExpPoly::from_i64(1)).scale(&half).scale(&f.integral_01()))
        .add(&ExpPoly::constant(x.mul(f).integral_01()))
}

fn main() {
    let conditions = vec![
        BoundaryFunctional::eval(0, 1).unwrap(),
        BoundaryFunctional::eval(1, 1).unwrap(),
        BoundaryFunctional::eval(1, 0).unwrap(),
    ];
    let problem = BoundaryProblem::new(DiffOp::d_pow(2).unwrap(), conditions).unwrap();
    println!("regular: {:?}", problem.regularity());
    println!("compatibility: {}", problem.compatibility().unwrap());

    let g = GreenSpec::new(problem, vec![ExpPoly::from_i64(1)]).unwrap();
    println!("{g}");
    for f in [ExpPoly::from_i64(1), ExpPoly::x(), ExpPoly::x_pow(2), ExpPoly::exp(1)] {
        let u = g.green_apply(&f).unwrap();
        println!("G({f}) = {u}");
        assert_eq!(u, closed_form(&f));
    }
}
