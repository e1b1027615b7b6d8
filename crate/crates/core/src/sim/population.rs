use rand::Rng;

use crate::belief::{BeliefPair, BeliefState};
use crate::error::{check_len, Error, Result};
use crate::measures::payoff_bits;
use crate::truth::{TruthValue, Valuation};

/// Agents' beliefs plus the hidden Boolean world they are judged against.
///
/// Each agent's payoff against the world is cached and refreshed whenever the
/// agent's belief is replaced.
#[derive(Debug, Clone)]
pub struct Population {
    agents: Vec<BeliefState>,
    world: Vec<bool>,
    payoffs: Vec<f64>,
}

impl Population {
    pub fn new(agents: Vec<BeliefState>, world: &Valuation) -> Result<Self> {
        if agents.len() < 2 {
            return Err(Error::Config(format!("population needs at least 2 agents, got {}", agents.len())));
        }
        if world.is_empty() {
            return Err(Error::Config("language size must be at least 1".into()));
        }
        if let Some(i) = world.truths().iter().position(|&t| t == TruthValue::Borderline) {
            return Err(Error::BorderlineWorld(i));
        }
        for a in &agents {
            check_len(world.len(), a.len())?;
        }
        let world: Vec<bool> = world.truths().iter().map(|&t| t == TruthValue::True).collect();
        let payoffs = agents.iter().map(|a| payoff_bits(a, &world)).collect();
        Ok(Population { agents, world, payoffs })
    }

    /// Random population: every pair is the ordered pair of two independent
    /// uniforms on `[0,1)`, and the world is uniform on `{0,1}^n`.
    pub fn random<R: Rng + ?Sized>(agents: usize, language_size: usize, rng: &mut R) -> Result<Self> {
        if agents < 2 {
            return Err(Error::Config(format!("population needs at least 2 agents, got {agents}")));
        }
        if language_size < 1 {
            return Err(Error::Config("language size must be at least 1".into()));
        }
        let beliefs: Vec<BeliefState> = (0..agents)
            .map(|_| {
                (0..language_size)
                    .map(|_| {
                        let x: f64 = rng.gen();
                        let y: f64 = rng.gen();
                        BeliefPair::new(x.min(y), x.max(y)).expect("uniform draws lie in [0,1)")
                    })
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        let world: Vec<bool> = (0..language_size).map(|_| rng.gen()).collect();
        Self::new(beliefs, &Valuation::from_bools(&world))
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn language_size(&self) -> usize {
        self.world.len()
    }

    pub fn agents(&self) -> &[BeliefState] {
        &self.agents
    }

    pub fn agent(&self, i: usize) -> &BeliefState {
        &self.agents[i]
    }

    pub fn world(&self) -> Valuation {
        Valuation::from_bools(&self.world)
    }

    pub fn world_bits(&self) -> &[bool] {
        &self.world
    }

    /// Cached payoff of every agent against the world.
    pub fn payoffs(&self) -> &[f64] {
        &self.payoffs
    }

    pub fn set_agent(&mut self, i: usize, belief: BeliefState) -> Result<()> {
        check_len(self.language_size(), belief.len())?;
        self.payoffs[i] = payoff_bits(&belief, &self.world);
        self.agents[i] = belief;
        Ok(())
    }
}
