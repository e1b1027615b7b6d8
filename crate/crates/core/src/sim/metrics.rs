use std::collections::HashSet;

use rand::Rng;

use super::population::Population;
use super::selection::uniform_pair;
use crate::belief::BeliefState;
use crate::measures::{entropy, inconsistency_unchecked, vagueness};

/// Population statistics at one point of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsSnapshot {
    pub iteration: u64,
    /// Distinct beliefs under exact equality.
    pub unique_beliefs: usize,
    pub mean_vagueness: f64,
    pub mean_entropy: f64,
    pub mean_pairwise_inconsistency: f64,
    /// `100 · mean payoff / n`, in `[-100, 100]`.
    pub mean_payoff_pct: f64,
}

/// How many agent pairs feed the mean pairwise inconsistency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSample {
    /// Every unordered pair.
    All,
    /// This many uniformly drawn pairs of distinct agents. Falls back to
    /// [`PairSample::All`] when that is no more work.
    Sampled(usize),
}

pub fn unique_beliefs(agents: &[BeliefState]) -> usize {
    agents.iter().collect::<HashSet<_>>().len()
}

pub fn mean_pairwise_inconsistency<R: Rng + ?Sized>(agents: &[BeliefState], sample: PairSample, rng: &mut R) -> f64 {
    let n = agents.len();
    let all_pairs = n * (n - 1) / 2;
    match sample {
        PairSample::Sampled(k) if k > 0 && k < all_pairs => {
            let total: f64 = (0..k)
                .map(|_| {
                    let (i, j) = uniform_pair(n, rng);
                    inconsistency_unchecked(&agents[i], &agents[j])
                })
                .sum();
            total / k as f64
        }
        _ => {
            let mut total = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    total += inconsistency_unchecked(&agents[i], &agents[j]);
                }
            }
            total / all_pairs as f64
        }
    }
}

pub fn snapshot<R: Rng + ?Sized>(pop: &Population, iteration: u64, sample: PairSample, rng: &mut R) -> MetricsSnapshot {
    let agents = pop.agents();
    let count = agents.len() as f64;
    let n = pop.language_size() as f64;
    MetricsSnapshot {
        iteration,
        unique_beliefs: unique_beliefs(agents),
        mean_vagueness: agents.iter().map(vagueness).sum::<f64>() / count,
        mean_entropy: agents.iter().map(entropy).sum::<f64>() / count,
        mean_pairwise_inconsistency: mean_pairwise_inconsistency(agents, sample, rng),
        mean_payoff_pct: 100.0 * pop.payoffs().iter().sum::<f64>() / (count * n),
    }
}
