use crate::matrix::{Matrix, MatrixError};
use crate::scalar::Field;
use crate::subspace::Subspace;

use super::GenInvError;

/// The seven equivalent characterisations of an outer inverse, evaluated
/// independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SevenWay {
    pub statements: [bool; 7],
    /// Every statement equals the outer flag.
    pub agree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verification {
    pub inner: bool,
    pub outer: bool,
    pub reflexive: bool,
    pub seven_way: SevenWay,
}

/// Checks `G : W → V` against `T : V → W` by direct matrix identities.
pub fn verify<F: Field>(t: &Matrix<F>, g: &Matrix<F>) -> Result<Verification, GenInvError> {
    if t.rows() != g.cols() || t.cols() != g.rows() {
        return Err(MatrixError::DimensionMismatch(format!(
            "T is {}x{} but G is {}x{}",
            t.rows(),
            t.cols(),
            g.rows(),
            g.cols()
        ))
        .into());
    }
    let tg = t.dot(g);
    let gt = g.dot(t);
    let inner = tg.dot(t) == *t;
    let outer = gt.dot(g) == *g;

    let (n, m) = (t.cols(), t.rows());
    let img_g = Subspace::image_of(g);
    let ker_g = Subspace::kernel_of(g);
    let img_t = Subspace::image_of(t);
    let ker_t = Subspace::kernel_of(t);
    let gt_proj = gt.is_idempotent();
    let tg_proj = tg.is_idempotent();
    let img_gt = Subspace::image_of(&gt);
    let ker_gt = Subspace::kernel_of(&gt);
    let img_tg = Subspace::image_of(&tg);
    let ker_tg = Subspace::kernel_of(&tg);

    let statements = [
        outer,
        gt_proj && img_gt == img_g,
        gt_proj && img_g.is_direct(&ker_gt)? && img_g.dim() + ker_gt.dim() == n,
        gt_proj && img_t.sum(&ker_g)?.is_full(),
        tg_proj && ker_tg == ker_g,
        tg_proj && ker_g.is_direct(&img_tg)? && ker_g.dim() + img_tg.dim() == m,
        tg_proj && img_g.is_direct(&ker_t)?,
    ];
    Ok(Verification {
        inner,
        outer,
        reflexive: inner && outer,
        seven_way: SevenWay {
            agree: statements.iter().all(|&s| s == outer),
            statements,
        },
    })
}
