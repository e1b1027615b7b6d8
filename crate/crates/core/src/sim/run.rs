use super::engine::{step, RegimeConfig};
use super::metrics::{snapshot, MetricsSnapshot, PairSample};
use super::population::Population;
use super::rng::{derive_seed, stream};
use super::selection::SelectionStrategy;
use crate::error::{Error, Result};

/// Label mixed into the run seed for the metrics-sampling stream, so that
/// changing the snapshot cadence never perturbs the dynamics.
const METRICS_STREAM: u64 = 0x6d65_7472_6963_73;

/// Everything needed to execute one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub agents: usize,
    pub language_size: usize,
    pub regime: RegimeConfig,
    pub strategy: SelectionStrategy,
    pub iterations: u64,
    pub snapshot_interval: u64,
    /// Pairs sampled for intermediate inconsistency snapshots. The final
    /// snapshot always uses every pair.
    pub sample_pairs: usize,
}

impl RunConfig {
    pub const DEFAULT_SAMPLE_PAIRS: usize = 10_000;

    pub fn new(agents: usize, language_size: usize, regime: RegimeConfig, strategy: SelectionStrategy) -> Self {
        RunConfig {
            agents,
            language_size,
            regime,
            strategy,
            iterations: 50_000,
            snapshot_interval: 100,
            sample_pairs: Self::DEFAULT_SAMPLE_PAIRS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.agents < 2 {
            return Err(Error::Config(format!("agents must be at least 2, got {}", self.agents)));
        }
        if self.language_size < 1 {
            return Err(Error::Config("language size must be at least 1".into()));
        }
        if self.snapshot_interval < 1 {
            return Err(Error::Config("snapshot interval must be at least 1".into()));
        }
        RegimeConfig::new(self.regime.mode, self.regime.gamma, self.regime.alpha).map(|_| ())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// Snapshots at iteration 0, every `snapshot_interval`, and the last
    /// iteration, in order and without duplicates.
    pub series: Vec<MetricsSnapshot>,
}

impl RunOutput {
    pub fn final_snapshot(&self) -> &MetricsSnapshot {
        self.series.last().expect("series always holds the initial snapshot")
    }

    pub fn initial_snapshot(&self) -> &MetricsSnapshot {
        &self.series[0]
    }

    /// Latest snapshot taken at or before `iteration`.
    pub fn at(&self, iteration: u64) -> Option<&MetricsSnapshot> {
        self.series.iter().take_while(|s| s.iteration <= iteration).last()
    }
}

/// Runs one simulation. The output is a pure function of `(config, seed)`.
pub fn run(config: &RunConfig, seed: u64) -> Result<RunOutput> {
    config.validate()?;
    let mut rng = stream(seed);
    let mut metrics_rng = stream(derive_seed(seed, &[METRICS_STREAM]));
    let mut pop = Population::random(config.agents, config.language_size, &mut rng)?;

    let sampled = PairSample::Sampled(config.sample_pairs);
    let capacity = (config.iterations / config.snapshot_interval) as usize + 2;
    let mut series = Vec::with_capacity(capacity);
    for t in 0..config.iterations {
        if t % config.snapshot_interval == 0 {
            series.push(snapshot(&pop, t, sampled, &mut metrics_rng));
        }
        step(&mut pop, &config.regime, config.strategy, &mut rng);
    }
    series.push(snapshot(&pop, config.iterations, PairSample::All, &mut metrics_rng));
    Ok(RunOutput { series })
}
