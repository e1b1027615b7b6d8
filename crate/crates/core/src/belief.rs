//! Lower/upper belief pairs and the belief-level consensus operator.
//!
//! A [`BeliefPair`] `(lower, upper)` encodes a probability distribution over
//! the three truth values of one proposition: `P(true) = lower`,
//! `P(borderline) = upper - lower`, `P(false) = 1 - upper`. Combining two
//! independent distributions through the truth-table operator and reading the
//! lower/upper measures back off gives
//!
//! ```text
//! lower' = L1·U2 + U1·L2 − L1·L2
//! upper' = L1 + L2 + U1·U2 − U1·L2 − L1·U2
//! ```

use std::hash::{Hash, Hasher};

use crate::error::{check_len, Error, Result};

/// Absolute slack absorbed by the pair constructors.
pub const PAIR_TOLERANCE: f64 = 1e-12;

/// Lower and upper belief for a single proposition.
///
/// Equality and hashing compare the bit patterns of both reals, so two pairs
/// are equal only when they are identical. Constructors normalise `-0.0` to
/// `0.0`.
#[derive(Debug, Clone, Copy)]
pub struct BeliefPair {
    lower: f64,
    upper: f64,
}

impl PartialEq for BeliefPair {
    fn eq(&self, other: &Self) -> bool {
        self.lower.to_bits() == other.lower.to_bits() && self.upper.to_bits() == other.upper.to_bits()
    }
}

impl Eq for BeliefPair {}

impl Hash for BeliefPair {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lower.to_bits().hash(state);
        self.upper.to_bits().hash(state);
    }
}

fn unit_clamp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x > 1.0 {
        1.0
    } else {
        x
    }
}

impl BeliefPair {
    /// The fully vague pair `(0, 1)`: all mass on borderline.
    pub const VAGUE: BeliefPair = BeliefPair { lower: 0.0, upper: 1.0 };
    /// Certainly true.
    pub const TRUE: BeliefPair = BeliefPair { lower: 1.0, upper: 1.0 };
    /// Certainly false.
    pub const FALSE: BeliefPair = BeliefPair { lower: 0.0, upper: 0.0 };

    /// Builds a pair, snapping values within [`PAIR_TOLERANCE`] of the
    /// feasible region onto it and rejecting anything farther out.
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        let bad = !lower.is_finite()
            || !upper.is_finite()
            || lower < -PAIR_TOLERANCE
            || upper > 1.0 + PAIR_TOLERANCE
            || lower > upper + PAIR_TOLERANCE;
        if bad {
            return Err(Error::InvalidPair { lower, upper });
        }
        Ok(Self::snapped(lower, upper))
    }

    fn snapped(lower: f64, upper: f64) -> Self {
        let upper = unit_clamp(upper);
        let lower = unit_clamp(lower).min(upper);
        BeliefPair { lower, upper }
    }

    /// Certain pair for a Boolean truth value: `(t, t)`.
    pub fn certain(t: bool) -> Self {
        if t {
            Self::TRUE
        } else {
            Self::FALSE
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// Probabilities of (true, borderline, false).
    pub fn marginal(&self) -> [f64; 3] {
        [self.lower, self.upper - self.lower, 1.0 - self.upper]
    }

    pub fn is_crisp(&self) -> bool {
        self.upper - self.lower == 0.0
    }

    /// One of `(0,0)`, `(0,1)`, `(1,1)`.
    pub fn is_certain(&self) -> bool {
        *self == Self::FALSE || *self == Self::VAGUE || *self == Self::TRUE
    }

    /// Consensus with another pair.
    ///
    /// When either side is certain the closed form is used, which is the
    /// exact value of the general expression (`(0,1)` is the identity,
    /// `(1,1)` maps `(L,U)` to `(U,1)` and `(0,0)` maps it to `(0,L)`).
    /// Otherwise the general expression is evaluated in an operand-symmetric
    /// order so the result is bitwise commutative.
    pub fn consensus(&self, other: &BeliefPair) -> BeliefPair {
        if let Some(c) = other.absorb(self) {
            return c;
        }
        if let Some(c) = self.absorb(other) {
            return c;
        }
        let (l1, u1, l2, u2) = (self.lower, self.upper, other.lower, other.upper);
        let cross = l1 * u2 + u1 * l2;
        let lower = cross - l1 * l2;
        let upper = (l1 + l2) + u1 * u2 - cross;
        debug_assert!(
            lower >= -PAIR_TOLERANCE && upper <= 1.0 + PAIR_TOLERANCE && lower <= upper + PAIR_TOLERANCE,
            "consensus left the feasible region: ({lower}, {upper})"
        );
        Self::snapped(lower, upper)
    }

    // `self` certain: combine it with `other` in closed form.
    fn absorb(&self, other: &BeliefPair) -> Option<BeliefPair> {
        if *self == Self::VAGUE {
            Some(*other)
        } else if *self == Self::TRUE {
            Some(BeliefPair { lower: other.upper, upper: 1.0 })
        } else if *self == Self::FALSE {
            Some(BeliefPair { lower: 0.0, upper: other.lower })
        } else {
            None
        }
    }
}

/// An agent's belief: one [`BeliefPair`] per proposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BeliefState(Vec<BeliefPair>);

impl BeliefState {
    pub fn new(pairs: Vec<BeliefPair>) -> Self {
        BeliefState(pairs)
    }

    /// Builds a state from raw `(lower, upper)` tuples, validating each.
    pub fn from_tuples(pairs: &[(f64, f64)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(l, u)| BeliefPair::new(l, u))
            .collect::<Result<Vec<_>>>()
            .map(BeliefState)
    }

    /// The fully vague state, the identity of [`consensus_belief`].
    pub fn vague(n: usize) -> Self {
        BeliefState(vec![BeliefPair::VAGUE; n])
    }

    /// Evidence state: certain about proposition `index`, vague elsewhere.
    pub fn evidence(n: usize, index: usize, truth: bool) -> Result<Self> {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
        let mut pairs = vec![BeliefPair::VAGUE; n];
        pairs[index] = BeliefPair::certain(truth);
        Ok(BeliefState(pairs))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[BeliefPair] {
        &self.0
    }

    pub(crate) fn pairs_mut(&mut self) -> &mut [BeliefPair] {
        &mut self.0
    }

    pub fn is_crisp(&self) -> bool {
        self.0.iter().all(BeliefPair::is_crisp)
    }

    pub fn is_certain(&self) -> bool {
        self.0.iter().all(BeliefPair::is_certain)
    }

    pub fn consensus(&self, other: &BeliefState) -> Result<BeliefState> {
        check_len(self.len(), other.len())?;
        Ok(BeliefState(
            self.0.iter().zip(&other.0).map(|(a, b)| a.consensus(b)).collect(),
        ))
    }
}

impl From<Vec<BeliefPair>> for BeliefState {
    fn from(v: Vec<BeliefPair>) -> Self {
        BeliefState(v)
    }
}

pub fn consensus_belief(b1: &BeliefState, b2: &BeliefState) -> Result<BeliefState> {
    b1.consensus(b2)
}
