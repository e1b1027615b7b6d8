//! The interaction rules and the single-iteration step.

use rand::Rng;

use super::population::Population;
use super::selection::{select_pair, SelectionStrategy};
use crate::belief::{BeliefPair, BeliefState};
use crate::error::{Error, Result};
use crate::measures::inconsistency_unchecked;

/// Which belief-changing processes run each iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    ConsensusOnly,
    ConsensusPlusEvidence,
    EvidenceOnly,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::ConsensusOnly => "consensus_only",
            Mode::ConsensusPlusEvidence => "consensus_plus_evidence",
            Mode::EvidenceOnly => "evidence_only",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        [Mode::ConsensusOnly, Mode::ConsensusPlusEvidence, Mode::EvidenceOnly]
            .into_iter()
            .find(|m| m.name() == s)
    }

    pub fn consults_peers(self) -> bool {
        self != Mode::EvidenceOnly
    }

    pub fn receives_evidence(self) -> bool {
        self != Mode::ConsensusOnly
    }
}

/// Mode plus the bounded-confidence threshold `gamma` and the per-iteration
/// evidence probability `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeConfig {
    pub mode: Mode,
    pub gamma: f64,
    pub alpha: f64,
}

impl RegimeConfig {
    pub fn new(mode: Mode, gamma: f64, alpha: f64) -> Result<Self> {
        for (name, v) in [("gamma", gamma), ("alpha", alpha)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} must be in [0,1], got {v}")));
            }
        }
        Ok(RegimeConfig { mode, gamma, alpha })
    }

    pub fn consensus_only(gamma: f64) -> Result<Self> {
        Self::new(Mode::ConsensusOnly, gamma, 0.0)
    }
}

/// Bounded-confidence interaction. When the two agents' inconsistency does
/// not exceed `gamma`, both adopt their consensus and `true` is returned.
pub fn attempt_consensus(pop: &mut Population, i: usize, j: usize, gamma: f64) -> bool {
    debug_assert_ne!(i, j);
    let (a, b) = (pop.agent(i), pop.agent(j));
    if inconsistency_unchecked(a, b) > gamma {
        return false;
    }
    let merged = a.consensus(b).expect("population agents share one language");
    pop.set_agent(i, merged.clone()).expect("same length");
    pop.set_agent(j, merged).expect("same length");
    true
}

/// Combines `b` with evidence that proposition `index` has Boolean value
/// `truth`. Only that proposition changes: `(L,U)` becomes `(U,1)` for true
/// and `(0,L)` for false.
pub fn evidence_update(b: &BeliefState, index: usize, truth: bool) -> Result<BeliefState> {
    if index >= b.len() {
        return Err(Error::IndexOutOfRange { index, len: b.len() });
    }
    let mut out = b.clone();
    let p = out.pairs()[index];
    out.pairs_mut()[index] = if truth {
        BeliefPair::new(p.upper(), 1.0)?
    } else {
        BeliefPair::new(0.0, p.lower())?
    };
    Ok(out)
}

/// What happened during one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepReport {
    /// Selected pair and whether they combined.
    pub interaction: Option<(usize, usize, bool)>,
    /// Agent and proposition that received evidence.
    pub evidence: Option<(usize, usize)>,
}

/// One iteration: a consensus attempt (unless evidence-only), then the
/// evidence lottery (unless consensus-only), each with its own draws.
pub fn step<R: Rng + ?Sized>(
    pop: &mut Population,
    regime: &RegimeConfig,
    strategy: SelectionStrategy,
    rng: &mut R,
) -> StepReport {
    let mut report = StepReport::default();
    if regime.mode.consults_peers() {
        let (i, j) = select_pair(pop, strategy, rng);
        let combined = attempt_consensus(pop, i, j, regime.gamma);
        report.interaction = Some((i, j, combined));
    }
    if regime.mode.receives_evidence() && rng.gen_bool(regime.alpha) {
        let agent = rng.gen_range(0..pop.len());
        let prop = rng.gen_range(0..pop.language_size());
        let truth = pop.world_bits()[prop];
        let updated = evidence_update(pop.agent(agent), prop, truth).expect("index drawn in range");
        pop.set_agent(agent, updated).expect("same length");
        report.evidence = Some((agent, prop));
    }
    report
}
