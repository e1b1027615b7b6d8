//! Grid enumeration, parallel execution and aggregation.

use std::cmp::Ordering;
use std::path::Path;

use rayon::prelude::*;
use vague_consensus::sim::rng::derive_seed;
use vague_consensus::sim::{run, MetricsSnapshot, Mode, RegimeConfig, RunConfig, RunOutput};

use crate::config::{Experiment, ExperimentConfig};
use crate::error::HarnessError;
use crate::output;

/// Gamma at which the unique-belief trajectory extract is recorded.
pub const TRAJECTORY_GAMMA: f64 = 0.8;

/// One point of the parameter grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellKey {
    pub experiment: Experiment,
    pub mode: Mode,
    pub n: usize,
    pub gamma: f64,
    pub alpha: f64,
}

fn mode_rank(m: Mode) -> u64 {
    match m {
        Mode::ConsensusOnly => 0,
        Mode::ConsensusPlusEvidence => 1,
        Mode::EvidenceOnly => 2,
    }
}

impl CellKey {
    /// Canonical order: experiment, mode, language size, alpha, gamma.
    pub fn canonical_cmp(&self, other: &CellKey) -> Ordering {
        self.experiment
            .cmp(&other.experiment)
            .then(mode_rank(self.mode).cmp(&mode_rank(other.mode)))
            .then(self.n.cmp(&other.n))
            .then(self.alpha.total_cmp(&other.alpha))
            .then(self.gamma.total_cmp(&other.gamma))
    }

    /// Seed of run `run` in this cell; depends only on the master seed, the
    /// cell key and the run index.
    pub fn seed(&self, master_seed: u64, run: usize) -> u64 {
        derive_seed(
            master_seed,
            &[
                self.experiment.id(),
                mode_rank(self.mode),
                self.n as u64,
                self.gamma.to_bits(),
                self.alpha.to_bits(),
                run as u64,
            ],
        )
    }

    /// File-name stem, e.g. `random_consensus_only_n5_g0.5_a0`.
    pub fn stem(&self) -> String {
        format!(
            "{}_{}_n{}_g{}_a{}",
            self.experiment,
            self.mode.name(),
            self.n,
            self.gamma,
            self.alpha
        )
    }

    pub fn run_config(&self, cfg: &ExperimentConfig) -> Result<RunConfig, HarnessError> {
        let regime = RegimeConfig::new(self.mode, self.gamma, self.alpha)?;
        let mut rc = RunConfig::new(cfg.agents, self.n, regime, self.experiment.strategy());
        rc.iterations = cfg.iterations;
        rc.snapshot_interval = cfg.snapshot_interval;
        rc.sample_pairs = cfg.sample_pairs;
        Ok(rc)
    }
}

/// Every grid cell of `cfg`, sorted canonically with duplicates removed.
pub fn cells(cfg: &ExperimentConfig) -> Vec<CellKey> {
    let rates: Vec<f64> = if cfg.evidence_rates.is_empty() {
        vec![0.0]
    } else {
        cfg.evidence_rates.clone()
    };
    let mut out = Vec::new();
    for &mode in &cfg.modes {
        for &n in &cfg.language_sizes {
            for &alpha in &rates {
                for &gamma in &cfg.gamma_grid {
                    out.push(CellKey { experiment: cfg.experiment, mode, n, gamma, alpha });
                }
            }
        }
    }
    out.sort_by(CellKey::canonical_cmp);
    out.dedup_by(|a, b| a.canonical_cmp(b) == Ordering::Equal);
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub mean: f64,
    /// Sample standard deviation; 0 when there is a single run.
    pub sd: f64,
}

impl Stat {
    pub fn of(values: &[f64]) -> Stat {
        let k = values.len();
        let mean = values.iter().sum::<f64>() / k as f64;
        let sd = if k < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64).sqrt()
        };
        Stat { mean, sd }
    }
}

/// Mean and spread of the final snapshots of one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregateRow {
    pub cell: CellKey,
    pub runs: usize,
    pub unique: Stat,
    pub vagueness: Stat,
    pub entropy: Stat,
    pub inconsistency: Stat,
    pub payoff_pct: Stat,
}

impl AggregateRow {
    pub fn from_finals(cell: CellKey, finals: &[MetricsSnapshot]) -> Self {
        let field = |f: fn(&MetricsSnapshot) -> f64| Stat::of(&finals.iter().map(f).collect::<Vec<_>>());
        AggregateRow {
            cell,
            runs: finals.len(),
            unique: field(|s| s.unique_beliefs as f64),
            vagueness: field(|s| s.mean_vagueness),
            entropy: field(|s| s.mean_entropy),
            inconsistency: field(|s| s.mean_pairwise_inconsistency),
            payoff_pct: field(|s| s.mean_payoff_pct),
        }
    }
}

/// Mean unique-belief count against iteration for one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub cell: CellKey,
    pub points: Vec<(u64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<AggregateRow>,
    pub trajectories: Vec<Trajectory>,
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| HarnessError::usage("jobs", e.to_string()))
}

/// Runs `runs` simulations of one cell in memory, in run-index order.
pub fn simulate_cell(cfg: &ExperimentConfig, cell: &CellKey, runs: usize, jobs: usize) -> Result<Vec<RunOutput>, HarnessError> {
    let rc = cell.run_config(cfg)?;
    pool(jobs)?.install(|| {
        (0..runs)
            .into_par_iter()
            .map(|r| run(&rc, cell.seed(cfg.master_seed, r)).map_err(HarnessError::from))
            .collect()
    })
}

fn trajectory_gamma(cfg: &ExperimentConfig) -> Option<f64> {
    if cfg.experiment != Experiment::Evidence {
        return None;
    }
    cfg.gamma_grid
        .iter()
        .copied()
        .min_by(|a, b| (a - TRAJECTORY_GAMMA).abs().total_cmp(&(b - TRAJECTORY_GAMMA).abs()))
}

struct RunResult {
    final_snapshot: MetricsSnapshot,
    unique_series: Option<Vec<(u64, usize)>>,
}

/// Executes the whole grid. Each run's series is written to
/// `<output_dir>/series/` as it completes; the returned rows are in canonical
/// cell order regardless of scheduling.
pub fn execute_sweep(cfg: &ExperimentConfig, jobs: usize) -> Result<SweepOutcome, HarnessError> {
    cfg.validate()?;
    let series_dir = cfg.output_dir.join("series");
    std::fs::create_dir_all(&series_dir).map_err(|e| HarnessError::io(&series_dir, e))?;

    let cells = cells(cfg);
    let traj_gamma = trajectory_gamma(cfg);
    let configs = cells
        .iter()
        .map(|c| c.run_config(cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let tasks: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..cfg.runs).map(move |r| (c, r)))
        .collect();

    let results: Vec<RunResult> = pool(jobs)?.install(|| {
        tasks
            .par_iter()
            .map(|&(c, r)| {
                let cell = &cells[c];
                let out = run(&configs[c], cell.seed(cfg.master_seed, r))?;
                write_run_series(&series_dir, cell, r, &out)?;
                let unique_series = (Some(cell.gamma) == traj_gamma)
                    .then(|| out.series.iter().map(|s| (s.iteration, s.unique_beliefs)).collect());
                Ok(RunResult { final_snapshot: *out.final_snapshot(), unique_series })
            })
            .collect::<Result<Vec<_>, HarnessError>>()
    })?;

    let mut rows = Vec::with_capacity(cells.len());
    let mut trajectories = Vec::new();
    for (c, cell) in cells.iter().enumerate() {
        let chunk = &results[c * cfg.runs..(c + 1) * cfg.runs];
        let finals: Vec<MetricsSnapshot> = chunk.iter().map(|r| r.final_snapshot).collect();
        rows.push(AggregateRow::from_finals(*cell, &finals));
        if let Some(first) = chunk[0].unique_series.as_ref() {
            let points = first
                .iter()
                .enumerate()
                .map(|(k, &(it, _))| {
                    let total: usize = chunk
                        .iter()
                        .map(|r| r.unique_series.as_ref().expect("all runs of a cell")[k].1)
                        .sum();
                    (it, total as f64 / chunk.len() as f64)
                })
                .collect();
            trajectories.push(Trajectory { cell: *cell, points });
        }
    }
    Ok(SweepOutcome { rows, trajectories })
}

fn write_run_series(dir: &Path, cell: &CellKey, run: usize, out: &RunOutput) -> Result<(), HarnessError> {
    let path = dir.join(format!("{}_run{}.csv", cell.stem(), run));
    output::write_atomic(&path, &output::series_csv(&out.series))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ConfigOverrides;

    #[test]
    fn default_grids_have_expected_cell_counts() {
        let random = ConfigOverrides::default().resolve().unwrap();
        assert_eq!(cells(&random).len(), 153);
        let evidence = ConfigOverrides { experiment: Some(Experiment::Evidence), ..Default::default() }
            .resolve()
            .unwrap();
        assert_eq!(cells(&evidence).len(), 2 * 3 * 51);
        let quality = ConfigOverrides { experiment: Some(Experiment::Quality), ..Default::default() }
            .resolve()
            .unwrap();
        assert_eq!(cells(&quality).len(), 51);
    }

    #[test]
    fn cells_are_canonical_regardless_of_input_order() {
        let a = ConfigOverrides { gamma_grid: Some(vec![0.9, 0.1, 0.5, 0.1]), language_sizes: Some(vec![5, 1]), ..Default::default() }
            .resolve()
            .unwrap();
        let b = ConfigOverrides { gamma_grid: Some(vec![0.1, 0.5, 0.9]), language_sizes: Some(vec![1, 5]), ..Default::default() }
            .resolve()
            .unwrap();
        assert_eq!(cells(&a), cells(&b));
        assert_eq!(cells(&a).len(), 6);
    }

    #[test]
    fn seeds_differ_across_cells_and_runs() {
        let cfg = ConfigOverrides::default().resolve().unwrap();
        let cs = cells(&cfg);
        let mut seeds: Vec<u64> = cs.iter().flat_map(|c| (0..3).map(move |r| c.seed(7, r))).collect();
        let total = seeds.len();
        seeds.sort_unstable();
        seeds.dedup();
        assert_eq!(seeds.len(), total);
    }

    #[test]
    fn stat_matches_hand_computation() {
        let s = Stat::of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.sd - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(Stat::of(&[3.0]).sd, 0.0);
    }

    #[test]
    fn stem_format() {
        let c = CellKey { experiment: Experiment::Evidence, mode: Mode::EvidenceOnly, n: 5, gamma: 0.8, alpha: 0.3 };
        assert_eq!(c.stem(), "evidence_evidence_only_n5_g0.8_a0.3");
    }
}
