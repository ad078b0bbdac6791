use crate::expcalc::ExpPoly;
use crate::geninv::{cor_outer_conditions, DualityWitness, FiniteDuality, RolReport};

use super::problem::{preimage_of_exceptional, BoundaryProblem, GreenSpec};
use super::spaces::{FnSpan, FunctionDuality, FunctionalSpan};
use super::BoundaryError;

pub type BoundaryWitness = DualityWitness<FnSpan, FunctionalSpan>;
pub type BoundaryRolReport = RolReport<BoundaryWitness>;

/// Functions on which `G₂G₁T₁T₂G₂G₁ = G₂G₁` is sampled.
pub fn test_functions() -> Vec<ExpPoly> {
    vec![
        ExpPoly::from_i64(1),
        ExpPoly::x(),
        ExpPoly::x_pow(2),
        ExpPoly::exp(1),
        ExpPoly::exp(-1),
        ExpPoly::x().mul(&ExpPoly::exp(1)),
    ]
}

/// `G₂G₁ f`.
pub fn product_apply(spec1: &GreenSpec, spec2: &GreenSpec, f: &ExpPoly) -> Result<ExpPoly, BoundaryError> {
    spec2.green_apply(&spec1.green_apply(f)?)
}

fn outer_identity_sampled(spec1: &GreenSpec, spec2: &GreenSpec) -> Result<bool, BoundaryError> {
    for f in test_functions() {
        let u = product_apply(spec1, spec2, &f)?;
        let tu = spec1.operator().apply(&spec2.operator().apply(&u));
        if product_apply(spec1, spec2, &tu)? != u {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides whether `G₂G₁` is an outer inverse of `T₁T₂` for the generalized
/// Green's operators of `spec1` and `spec2`. Statements (ii)-(v) are decided
/// exactly; statement (i) is checked on [`test_functions`], so a `false`
/// there is conclusive and a `true` is evidence.
pub fn rol_check(spec1: &GreenSpec, spec2: &GreenSpec) -> Result<BoundaryRolReport, BoundaryError> {
    let d = FunctionDuality;
    let k1 = preimage_of_exceptional(spec1.operator(), spec1.exceptional().basis());
    let (mut conditions, witnesses) = cor_outer_conditions(
        &d,
        spec2.compatibility(),
        &k1,
        &spec1.problem().condition_span(),
        spec2.exceptional(),
    )?;
    conditions.i = Some(outer_identity_sampled(spec1, spec2)?);
    Ok(RolReport::from_conditions(conditions, witnesses))
}

/// The Green's data of `G₂G₁`: operator `T₁T₂`, conditions
/// `𝓑₂ ⊕ T₂*(𝓑₁ ∩ E₂⊥)` and exceptional space `E₁ ⊕ T₁(𝓑₁⊥ ∩ E₂)`.
pub fn compose(spec1: &GreenSpec, spec2: &GreenSpec) -> Result<GreenSpec, BoundaryError> {
    let report = rol_check(spec1, spec2)?;
    if !report.verdict {
        return Err(BoundaryError::ReverseOrderLawFails {
            failed: report.conditions.failed(),
        });
    }
    let d = FunctionDuality;
    let scr_b1 = spec1.problem().condition_span();
    let t2 = spec2.operator();
    let mut conditions = spec2.problem().conditions().to_vec();
    conditions.extend(
        d.dual_cap_perp(&scr_b1, spec2.exceptional())?
            .basis()
            .iter()
            .map(|b| b.compose_with_diffop(t2)),
    );
    let conditions = FunctionalSpan::new(conditions).basis().to_vec();

    let mut exceptional = spec1.exceptional().basis().to_vec();
    exceptional.extend(
        d.primal_cap_perp(spec2.exceptional(), &scr_b1)?
            .basis()
            .iter()
            .map(|u| spec1.operator().apply(u)),
    );
    let operator = spec1.operator().mul(t2);
    GreenSpec::new(BoundaryProblem::new(operator, conditions)?, exceptional)
}
