//! Scalar measures over beliefs: vagueness, entropy, pairwise inconsistency
//! and payoff against a Boolean world.

use crate::belief::{BeliefPair, BeliefState};
use crate::error::{check_len, Error, Result};
use crate::truth::{TruthValue, Valuation};

/// Mean probability of the borderline value across propositions.
pub fn vagueness(b: &BeliefState) -> f64 {
    mean(b.pairs().iter().map(|p| p.upper() - p.lower()))
}

/// Mean base-2 Shannon entropy of the per-proposition truth-value marginals.
/// Zero-probability outcomes contribute nothing.
pub fn entropy(b: &BeliefState) -> f64 {
    mean(b.pairs().iter().map(pair_entropy))
}

fn pair_entropy(p: &BeliefPair) -> f64 {
    let weighted: f64 = p
        .marginal()
        .iter()
        .filter(|&&q| q > 0.0)
        .map(|&q| q * q.log2())
        .sum();
    // 0.0 - x rather than -x keeps the certain case at +0.0.
    0.0 - weighted
}

/// Mean probability of a direct true/false conflict between two beliefs.
pub fn inconsistency(b1: &BeliefState, b2: &BeliefState) -> Result<f64> {
    check_len(b1.len(), b2.len())?;
    Ok(inconsistency_unchecked(b1, b2))
}

pub(crate) fn inconsistency_unchecked(b1: &BeliefState, b2: &BeliefState) -> f64 {
    mean(
        b1.pairs()
            .iter()
            .zip(b2.pairs())
            .map(|(p, q)| p.lower() * (1.0 - q.upper()) + (1.0 - p.upper()) * q.lower()),
    )
}

/// Expected payoff of holding `b` when the world is `truth`: +1 for believing
/// the true value, −1 for the opposite one, 0 for borderline.
pub fn payoff(b: &BeliefState, truth: &Valuation) -> Result<f64> {
    check_len(b.len(), truth.len())?;
    let mut bits = Vec::with_capacity(truth.len());
    for (i, t) in truth.truths().iter().enumerate() {
        match t {
            TruthValue::True => bits.push(true),
            TruthValue::False => bits.push(false),
            TruthValue::Borderline => return Err(Error::BorderlineWorld(i)),
        }
    }
    Ok(payoff_bits(b, &bits))
}

pub(crate) fn payoff_bits(b: &BeliefState, world: &[bool]) -> f64 {
    b.pairs()
        .iter()
        .zip(world)
        .map(|(p, &t)| {
            let gain = p.lower() + p.upper() - 1.0;
            if t {
                gain
            } else {
                -gain
            }
        })
        .sum()
}

fn mean(it: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = it.len();
    if n == 0 {
        return 0.0;
    }
    it.sum::<f64>() / n as f64
}
