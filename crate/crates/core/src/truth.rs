//! Three-valued truth assignments and the valuation-level consensus operator.
//!
//! Truth values are `False` (0), `Borderline` (½) and `True` (1). Two opinions
//! are merged proposition by proposition: a strong view beats a borderline one,
//! agreement is preserved, and directly opposing views compromise on
//! `Borderline`.

use std::fmt;

use crate::error::{check_len, Result};

/// One of the three truth values, ordered `False < Borderline < True`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    False,
    Borderline,
    True,
}

impl TruthValue {
    pub const ALL: [TruthValue; 3] = [TruthValue::True, TruthValue::Borderline, TruthValue::False];

    /// Numeric value in {0, 0.5, 1}.
    pub fn as_f64(self) -> f64 {
        match self {
            TruthValue::False => 0.0,
            TruthValue::Borderline => 0.5,
            TruthValue::True => 1.0,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    /// Pairwise consensus of two truth values.
    ///
    /// | ⊙ | 1 | ½ | 0 |
    /// |---|---|---|---|
    /// | 1 | 1 | 1 | ½ |
    /// | ½ | 1 | ½ | 0 |
    /// | 0 | ½ | 0 | 0 |
    pub fn consensus(self, other: TruthValue) -> TruthValue {
        use TruthValue::*;
        match (self, other) {
            (Borderline, x) | (x, Borderline) => x,
            (True, True) => True,
            (False, False) => False,
            (True, False) | (False, True) => Borderline,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TruthValue::False => "0",
            TruthValue::Borderline => "1/2",
            TruthValue::True => "1",
        };
        f.write_str(s)
    }
}

/// Free-function form of [`TruthValue::consensus`].
pub fn consensus_truth(a: TruthValue, b: TruthValue) -> TruthValue {
    a.consensus(b)
}

/// An assignment of a truth value to every proposition of the language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation(Vec<TruthValue>);

impl Valuation {
    pub fn new(truths: Vec<TruthValue>) -> Self {
        Valuation(truths)
    }

    /// Boolean valuation from bits (`true` ↦ 1, `false` ↦ 0).
    pub fn from_bools(bits: &[bool]) -> Self {
        Valuation(bits.iter().copied().map(TruthValue::from_bool).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn truths(&self) -> &[TruthValue] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<TruthValue> {
        self.0.get(i).copied()
    }

    /// True when no proposition is `Borderline`.
    pub fn is_boolean(&self) -> bool {
        self.0.iter().all(|&t| t != TruthValue::Borderline)
    }

    pub fn consensus(&self, other: &Valuation) -> Result<Valuation> {
        check_len(self.len(), other.len())?;
        Ok(Valuation(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.consensus(b))
                .collect(),
        ))
    }
}

impl From<Vec<TruthValue>> for Valuation {
    fn from(v: Vec<TruthValue>) -> Self {
        Valuation(v)
    }
}

pub fn consensus_valuation(v1: &Valuation, v2: &Valuation) -> Result<Valuation> {
    v1.consensus(v2)
}
