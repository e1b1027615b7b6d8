//! Two independent reformulations of the belief consensus operator, used to
//! cross-check the closed form. Neither is on the simulation path.
//!
//! * [`consensus_belief_enum_oracle`] builds the 3×3 product table of the two
//!   truth-value marginals, maps every cell through the truth table and sums
//!   the cell probabilities.
//! * [`ds_union_combine_oracle`] converts each pair into a Dempster–Shafer mass
//!   function on the frame `{0,1}`, combines with the union rule
//!   `c(A,B) = A∩B if non-empty else A∪B`, and reads back the belief and
//!   plausibility of `{1}`.

use crate::belief::{BeliefPair, BeliefState};
use crate::error::{check_len, Error, Result};
use crate::truth::TruthValue;

const MASS_TOLERANCE: f64 = 1e-12;

/// Table-enumeration form of the consensus operator.
pub fn consensus_belief_enum_oracle(b1: &BeliefState, b2: &BeliefState) -> Result<BeliefState> {
    check_len(b1.len(), b2.len())?;
    b1.pairs()
        .iter()
        .zip(b2.pairs())
        .map(|(p, q)| {
            let (p_true, p_border) = enumerate_table(p, q);
            BeliefPair::new(p_true, p_true + p_border)
        })
        .collect::<Result<Vec<_>>>()
        .map(BeliefState::new)
}

fn weighted_truths(p: &BeliefPair) -> [(TruthValue, f64); 3] {
    let [t, h, f] = p.marginal();
    [
        (TruthValue::True, t),
        (TruthValue::Borderline, h),
        (TruthValue::False, f),
    ]
}

// Returns (P(true), P(borderline)) of the combined distribution.
fn enumerate_table(p: &BeliefPair, q: &BeliefPair) -> (f64, f64) {
    let mut p_true = 0.0;
    let mut p_border = 0.0;
    for (v1, w1) in weighted_truths(p) {
        for (v2, w2) in weighted_truths(q) {
            match v1.consensus(v2) {
                TruthValue::True => p_true += w1 * w2,
                TruthValue::Borderline => p_border += w1 * w2,
                TruthValue::False => {}
            }
        }
    }
    (p_true, p_border)
}

/// Non-empty subsets of the frame `{0,1}`; bit 0 stands for the value 0,
/// bit 1 for the value 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Focal(u8);

impl Focal {
    const FALSE: Focal = Focal(0b01);
    const TRUE: Focal = Focal(0b10);
    const BOTH: Focal = Focal(0b11);

    fn union_combine(self, other: Focal) -> Focal {
        let meet = self.0 & other.0;
        if meet != 0 {
            Focal(meet)
        } else {
            Focal(self.0 | other.0)
        }
    }
}

/// Mass function on the power set of `{0,1}`; the empty set carries no mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassFunction {
    pub m_true: f64,
    pub m_false: f64,
    pub m_both: f64,
}

impl MassFunction {
    pub fn new(m_true: f64, m_false: f64, m_both: f64) -> Result<Self> {
        let in_unit = |m: f64| (-MASS_TOLERANCE..=1.0 + MASS_TOLERANCE).contains(&m);
        let total = m_true + m_false + m_both;
        if !(in_unit(m_true) && in_unit(m_false) && in_unit(m_both)) || (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidMass { m_true, m_false, m_both });
        }
        Ok(MassFunction { m_true, m_false, m_both })
    }

    /// The vacuous mass function, all mass on `{0,1}`.
    pub fn vacuous() -> Self {
        MassFunction { m_true: 0.0, m_false: 0.0, m_both: 1.0 }
    }

    pub fn from_pair(p: &BeliefPair) -> Self {
        MassFunction {
            m_true: p.lower(),
            m_false: 1.0 - p.upper(),
            m_both: p.upper() - p.lower(),
        }
    }

    /// `(Bel({1}), Pl({1}))` as a belief pair.
    pub fn to_pair(&self) -> Result<BeliefPair> {
        BeliefPair::new(self.belief_true(), self.plausibility_true())
    }

    pub fn belief_true(&self) -> f64 {
        self.m_true
    }

    pub fn plausibility_true(&self) -> f64 {
        self.m_true + self.m_both
    }

    fn focal_elements(&self) -> [(Focal, f64); 3] {
        [
            (Focal::TRUE, self.m_true),
            (Focal::FALSE, self.m_false),
            (Focal::BOTH, self.m_both),
        ]
    }

    /// Union-rule combination.
    pub fn union_combine(&self, other: &MassFunction) -> MassFunction {
        let mut out = MassFunction { m_true: 0.0, m_false: 0.0, m_both: 0.0 };
        for (a, ma) in self.focal_elements() {
            for (b, mb) in other.focal_elements() {
                let slot = match a.union_combine(b) {
                    Focal::TRUE => &mut out.m_true,
                    Focal::FALSE => &mut out.m_false,
                    _ => &mut out.m_both,
                };
                *slot += ma * mb;
            }
        }
        out
    }
}

/// Dempster–Shafer union-rule form of the consensus operator.
pub fn ds_union_combine_oracle(b1: &BeliefState, b2: &BeliefState) -> Result<BeliefState> {
    check_len(b1.len(), b2.len())?;
    b1.pairs()
        .iter()
        .zip(b2.pairs())
        .map(|(p, q)| {
            MassFunction::from_pair(p)
                .union_combine(&MassFunction::from_pair(q))
                .to_pair()
        })
        .collect::<Result<Vec<_>>>()
        .map(BeliefState::new)
}
