//! Choosing which two agents interact.

use log::warn;
use rand::Rng;

use super::population::Population;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelectionStrategy {
    /// Two distinct agents, uniformly without replacement.
    UniformRandom,
    /// Distinct pair `{i, j}` chosen with probability proportional to
    /// `fitness_i · fitness_j`, where `fitness = payoff + n`.
    QualityProportional,
}

impl SelectionStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SelectionStrategy::UniformRandom => "uniform",
            SelectionStrategy::QualityProportional => "quality",
        }
    }
}

pub fn select_pair<R: Rng + ?Sized>(
    pop: &Population,
    strategy: SelectionStrategy,
    rng: &mut R,
) -> (usize, usize) {
    match strategy {
        SelectionStrategy::UniformRandom => uniform_pair(pop.len(), rng),
        SelectionStrategy::QualityProportional => {
            let shift = pop.language_size() as f64;
            let weights: Vec<f64> = pop.payoffs().iter().map(|p| (p + shift).max(0.0)).collect();
            product_proportional_pair(&weights, rng).unwrap_or_else(|| {
                warn!("fewer than two agents have positive fitness; falling back to uniform selection");
                uniform_pair(pop.len(), rng)
            })
        }
    }
}

pub(crate) fn uniform_pair<R: Rng + ?Sized>(len: usize, rng: &mut R) -> (usize, usize) {
    debug_assert!(len >= 2);
    let i = rng.gen_range(0..len);
    let mut j = rng.gen_range(0..len - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Draws an ordered pair of distinct indices with `P(i, j) ∝ w_i · w_j`.
///
/// Both indices are drawn independently by roulette wheel; the whole pair is
/// rejected and redrawn when they collide. Returns `None` when fewer than two
/// weights are positive, since no distinct pair then has positive weight.
pub fn product_proportional_pair<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> Option<(usize, usize)> {
    if weights.iter().filter(|&&w| w > 0.0).count() < 2 {
        return None;
    }
    let total: f64 = weights.iter().sum();
    loop {
        let i = roulette(weights, total, rng);
        let j = roulette(weights, total, rng);
        if i != j {
            return Some((i, j));
        }
    }
}

fn roulette<R: Rng + ?Sized>(weights: &[f64], total: f64, rng: &mut R) -> usize {
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc += w;
            last_positive = i;
            if acc > target {
                return i;
            }
        }
    }
    // Round-off can leave `acc` just short of `target`.
    last_positive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::BeliefState;
    use crate::sim::rng::stream;
    use crate::truth::Valuation;

    #[test]
    fn two_agents_always_selects_both() {
        let pop = Population::new(vec![BeliefState::vague(1); 2], &Valuation::from_bools(&[true])).unwrap();
        let mut rng = stream(3);
        for strategy in [SelectionStrategy::UniformRandom, SelectionStrategy::QualityProportional] {
            for _ in 0..100 {
                let (i, j) = select_pair(&pop, strategy, &mut rng);
                assert_ne!(i, j);
                assert!(i < 2 && j < 2);
            }
        }
    }

    #[test]
    fn zero_weight_is_never_drawn() {
        let mut rng = stream(9);
        let w = [0.0, 1.0, 0.0, 2.0];
        for _ in 0..1000 {
            let (i, j) = product_proportional_pair(&w, &mut rng).unwrap();
            assert!(matches!((i, j), (1, 3) | (3, 1)));
        }
    }

    #[test]
    fn degenerate_weights_fall_back() {
        let mut rng = stream(1);
        assert_eq!(product_proportional_pair(&[0.0, 0.0, 0.0], &mut rng), None);
        assert_eq!(product_proportional_pair(&[0.0, 5.0, 0.0], &mut rng), None);

        // Everyone certain of the wrong answer: payoff −n, fitness 0.
        let world = Valuation::from_bools(&[true]);
        let wrong = BeliefState::from_tuples(&[(0.0, 0.0)]).unwrap();
        let pop = Population::new(vec![wrong; 5], &world).unwrap();
        let (i, j) = select_pair(&pop, SelectionStrategy::QualityProportional, &mut rng);
        assert_ne!(i, j);
    }

    #[test]
    fn uniform_pairs_cover_all_ordered_pairs() {
        let mut rng = stream(11);
        let mut seen = [[0u32; 4]; 4];
        for _ in 0..12_000 {
            let (i, j) = uniform_pair(4, &mut rng);
            seen[i][j] += 1;
        }
        for (i, row) in seen.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(c, 0);
                } else {
                    assert!((800..1200).contains(&c), "({i},{j}) drawn {c} times");
                }
            }
        }
    }
}
