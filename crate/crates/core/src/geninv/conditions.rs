use crate::scalar::{Field, Rational};
use crate::subspace::{DualSubspace, Subspace};

use super::GenInvError;

/// The five equivalent statements behind each reverse order law check.
/// Statement (i) is the direct operator identity and is `None` when it cannot
/// be evaluated from the inputs at hand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Conditions {
    pub i: Option<bool>,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
    pub v: bool,
}

impl Conditions {
    pub const LABELS: [&'static str; 5] = ["i", "ii", "iii", "iv", "v"];

    /// Statements that were evaluated, in order.
    pub fn evaluated(&self) -> Vec<(&'static str, bool)> {
        let mut out = Vec::with_capacity(5);
        if let Some(i) = self.i {
            out.push(("i", i));
        }
        out.extend([("ii", self.ii), ("iii", self.iii), ("iv", self.iv), ("v", self.v)]);
        out
    }

    /// All evaluated statements agree.
    pub fn consistent(&self) -> bool {
        let vals = self.evaluated();
        vals.iter().all(|(_, b)| *b == vals[0].1)
    }

    pub fn all_true(&self) -> bool {
        self.evaluated().iter().all(|(_, b)| *b)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.evaluated()
            .into_iter()
            .filter(|(_, b)| !b)
            .map(|(l, _)| l)
            .collect()
    }
}

/// The two sides of an inclusion `lesser ≤ greater`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionWitness<W> {
    pub label: &'static str,
    pub lesser: W,
    pub greater: W,
}

/// Witness spaces for conditions over Fⁿ, which may live on either side of
/// the duality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceWitness<F = Rational> {
    Primal(Subspace<F>),
    Dual(DualSubspace<F>),
}

impl<F: Field> std::fmt::Display for SpaceWitness<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpaceWitness::Primal(s) => write!(f, "{s}"),
            SpaceWitness::Dual(s) => write!(f, "{s}"),
        }
    }
}

impl<F: Field> From<Subspace<F>> for SpaceWitness<F> {
    fn from(s: Subspace<F>) -> Self {
        SpaceWitness::Primal(s)
    }
}

impl<F: Field> From<DualSubspace<F>> for SpaceWitness<F> {
    fn from(s: DualSubspace<F>) -> Self {
        SpaceWitness::Dual(s)
    }
}

/// Verdict of a reverse order law check with every condition's witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RolReport<W> {
    pub conditions: Conditions,
    /// Value of the subspace conditions; equals statement (i) whenever
    /// `consistent` holds.
    pub verdict: bool,
    pub consistent: bool,
    pub witnesses: Vec<ConditionWitness<W>>,
}

impl<W> RolReport<W> {
    pub(crate) fn from_conditions(conditions: Conditions, witnesses: Vec<ConditionWitness<W>>) -> Self {
        RolReport {
            verdict: conditions.ii,
            consistent: conditions.consistent(),
            conditions,
            witnesses,
        }
    }

    pub fn witness(&self, label: &str) -> Option<&ConditionWitness<W>> {
        self.witnesses.iter().find(|w| w.label == label)
    }

    pub fn map_witnesses<V>(self, f: impl Fn(W) -> V) -> RolReport<V> {
        RolReport {
            conditions: self.conditions,
            verdict: self.verdict,
            consistent: self.consistent,
            witnesses: self
                .witnesses
                .into_iter()
                .map(|w| ConditionWitness {
                    label: w.label,
                    lesser: f(w.lesser),
                    greater: f(w.greater),
                })
                .collect(),
        }
    }
}

/// Condition values with the inclusions behind them.
pub type Witnessed<F> = (Conditions, Vec<ConditionWitness<Subspace<F>>>);

/// Conditions (ii)-(v) for the composition `PQ` of two projectors to be a
/// projector, in terms of their images and kernels only.
pub fn pq_projector_conditions<F: Field>(
    img_p: &Subspace<F>,
    ker_p: &Subspace<F>,
    img_q: &Subspace<F>,
    ker_q: &Subspace<F>,
) -> Result<Witnessed<F>, GenInvError> {
    let kp_kq = ker_p.intersect(ker_q)?;
    let kp_iq = ker_p.intersect(img_q)?;
    let iq_kp = img_q.sum(ker_p)?;
    let iq_ip = img_q.sum(img_p)?;

    let w2 = ConditionWitness {
        label: "ii",
        lesser: img_p.intersect(&iq_kp)?,
        greater: img_q.sum(&kp_kq)?,
    };
    let w3 = ConditionWitness {
        label: "iii",
        lesser: img_q.clone(),
        greater: img_p.sum(&kp_iq)?.sum(&kp_kq)?,
    };
    let w4 = ConditionWitness {
        label: "iv",
        lesser: ker_p.intersect(&iq_ip)?,
        greater: ker_q.sum(&kp_iq)?,
    };
    let w5 = ConditionWitness {
        label: "v",
        lesser: ker_q.intersect(&iq_kp)?.intersect(&iq_ip)?,
        greater: ker_p.clone(),
    };
    let holds = |w: &ConditionWitness<Subspace<F>>| w.greater.includes(&w.lesser);
    let conditions = Conditions {
        i: None,
        ii: holds(&w2)?,
        iii: holds(&w3)?,
        iv: holds(&w4)?,
        v: holds(&w5)?,
    };
    Ok((conditions, vec![w2, w3, w4, w5]))
}
