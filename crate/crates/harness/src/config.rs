//! Experiment configuration: defaults, a flat `key = value` file format, and
//! layering (command-line flags over file values over defaults).

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use vague_consensus::sim::{Mode, SelectionStrategy};

use crate::error::HarnessError;

/// The three experimental regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Experiment {
    /// Uniform random pairing under bounded confidence.
    Random,
    /// Random pairing combined with (or replaced by) direct evidence.
    Evidence,
    /// Pairing proportional to the product of belief qualities.
    Quality,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Random => "random",
            Experiment::Evidence => "evidence",
            Experiment::Quality => "quality",
        }
    }

    pub fn strategy(self) -> SelectionStrategy {
        match self {
            Experiment::Quality => SelectionStrategy::QualityProportional,
            _ => SelectionStrategy::UniformRandom,
        }
    }

    pub(crate) fn id(self) -> u64 {
        match self {
            Experiment::Random => 1,
            Experiment::Evidence => 2,
            Experiment::Quality => 3,
        }
    }
}

impl std::str::FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(Experiment::Random),
            "evidence" => Ok(Experiment::Evidence),
            "quality" => Ok(Experiment::Quality),
            _ => Err(format!("unknown experiment `{s}` (expected random, evidence or quality)")),
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fully resolved parameterisation of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub agents: usize,
    pub language_sizes: Vec<usize>,
    pub gamma_grid: Vec<f64>,
    pub evidence_rates: Vec<f64>,
    pub modes: Vec<Mode>,
    pub iterations: u64,
    pub runs: usize,
    pub master_seed: u64,
    pub snapshot_interval: u64,
    pub sample_pairs: usize,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    /// Defaults for `experiment`.
    pub fn defaults(experiment: Experiment) -> Self {
        let (language_sizes, evidence_rates, modes) = match experiment {
            Experiment::Random => (vec![1, 3, 5], vec![], vec![Mode::ConsensusOnly]),
            Experiment::Evidence => (
                vec![5],
                vec![0.05, 0.15, 0.30],
                vec![Mode::ConsensusPlusEvidence, Mode::EvidenceOnly],
            ),
            Experiment::Quality => (vec![5], vec![], vec![Mode::ConsensusOnly]),
        };
        ExperimentConfig {
            experiment,
            agents: 1000,
            language_sizes,
            gamma_grid: parse_grid("0:1:0.02").expect("default grid"),
            evidence_rates,
            modes,
            iterations: 50_000,
            runs: 100,
            master_seed: 0,
            snapshot_interval: 100,
            sample_pairs: vague_consensus::sim::RunConfig::DEFAULT_SAMPLE_PAIRS,
            output_dir: PathBuf::from("out"),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let usage = |key: &str, msg: String| Err(HarnessError::usage(key, msg));
        if self.agents < 2 {
            return usage("agents", format!("must be at least 2, got {}", self.agents));
        }
        if self.language_sizes.is_empty() || self.language_sizes.contains(&0) {
            return usage("language_sizes", "need one or more sizes, each at least 1".into());
        }
        if self.gamma_grid.is_empty() {
            return usage("gamma_grid", "grid is empty".into());
        }
        if let Some(g) = self.gamma_grid.iter().find(|g| !(0.0..=1.0).contains(*g)) {
            return usage("gamma_grid", format!("{g} is outside [0,1]"));
        }
        if let Some(a) = self.evidence_rates.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return usage("evidence_rates", format!("{a} is outside [0,1]"));
        }
        match self.experiment {
            Experiment::Evidence => {
                if self.evidence_rates.is_empty() {
                    return usage("evidence_rates", "the evidence experiment needs at least one rate".into());
                }
                if self.modes.is_empty() || self.modes.contains(&Mode::ConsensusOnly) {
                    return usage(
                        "modes",
                        "the evidence experiment takes consensus_plus_evidence and/or evidence_only".into(),
                    );
                }
            }
            other => {
                if !self.evidence_rates.is_empty() {
                    return usage("evidence_rates", format!("evidence rates are meaningless for the {other} experiment"));
                }
                if self.modes != [Mode::ConsensusOnly] {
                    return usage("modes", format!("the {other} experiment only runs consensus_only"));
                }
            }
        }
        if self.runs < 1 {
            return usage("runs", "must be at least 1".into());
        }
        if self.snapshot_interval < 1 {
            return usage("snapshot_interval", "must be at least 1".into());
        }
        Ok(())
    }

    /// Flat `key = value` rendering, in the same format [`ConfigOverrides::from_file_text`] reads.
    pub fn render(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut s = String::new();
        let _ = writeln!(s, "experiment = {}", self.experiment);
        let _ = writeln!(s, "agents = {}", self.agents);
        let _ = writeln!(
            s,
            "language_sizes = {}",
            self.language_sizes.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
        );
        let _ = writeln!(s, "gamma_grid = {}", list(&self.gamma_grid));
        let _ = writeln!(s, "evidence_rates = {}", list(&self.evidence_rates));
        let _ = writeln!(
            s,
            "modes = {}",
            self.modes.iter().map(|m| m.name()).collect::<Vec<_>>().join(",")
        );
        let _ = writeln!(s, "iterations = {}", self.iterations);
        let _ = writeln!(s, "runs = {}", self.runs);
        let _ = writeln!(s, "master_seed = {}", self.master_seed);
        let _ = writeln!(s, "snapshot_interval = {}", self.snapshot_interval);
        let _ = writeln!(s, "sample_pairs = {}", self.sample_pairs);
        let _ = writeln!(s, "output_dir = {}", self.output_dir.display());
        s
    }
}

/// Partially specified configuration. Later layers override earlier ones
/// field by field.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub experiment: Option<Experiment>,
    pub agents: Option<usize>,
    pub language_sizes: Option<Vec<usize>>,
    pub gamma_grid: Option<Vec<f64>>,
    pub evidence_rates: Option<Vec<f64>>,
    pub modes: Option<Vec<Mode>>,
    pub iterations: Option<u64>,
    pub runs: Option<usize>,
    pub master_seed: Option<u64>,
    pub snapshot_interval: Option<u64>,
    pub sample_pairs: Option<usize>,
    pub output_dir: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "experiment",
    "agents",
    "language_sizes",
    "gamma_grid",
    "evidence_rates",
    "modes",
    "iterations",
    "runs",
    "master_seed",
    "snapshot_interval",
    "sample_pairs",
    "output_dir",
];

impl ConfigOverrides {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped;
    /// unknown or repeated keys are errors.
    pub fn from_file_text(text: &str) -> Result<Self, HarnessError> {
        let mut out = ConfigOverrides::default();
        let mut seen = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                HarnessError::usage("config", format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(HarnessError::usage(key, "unknown configuration key".into()));
            }
            if seen.contains(&key) {
                return Err(HarnessError::usage(key, "key given more than once".into()));
            }
            seen.push(key);
            out.set(key, value)?;
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::usage("config", format!("cannot read {}: {e}", path.display())))?;
        Self::from_file_text(&text)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), HarnessError> {
        let bad = |msg: String| HarnessError::usage(key, msg);
        match key {
            "experiment" => self.experiment = Some(value.parse().map_err(bad)?),
            "agents" => self.agents = Some(parse_num(key, value)?),
            "language_sizes" => self.language_sizes = Some(parse_list(key, value)?),
            "gamma_grid" => self.gamma_grid = Some(parse_grid(value).map_err(bad)?),
            "evidence_rates" => self.evidence_rates = Some(parse_list(key, value)?),
            "modes" => self.modes = Some(parse_modes(value).map_err(bad)?),
            "iterations" => self.iterations = Some(parse_num(key, value)?),
            "runs" => self.runs = Some(parse_num(key, value)?),
            "master_seed" => self.master_seed = Some(parse_num(key, value)?),
            "snapshot_interval" => self.snapshot_interval = Some(parse_num(key, value)?),
            "sample_pairs" => self.sample_pairs = Some(parse_num(key, value)?),
            "output_dir" => self.output_dir = Some(PathBuf::from(value)),
            _ => unreachable!("keys are checked against KEYS"),
        }
        Ok(())
    }

    /// `self` with every field set in `other` replaced.
    pub fn overlay(mut self, other: ConfigOverrides) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            experiment,
            agents,
            language_sizes,
            gamma_grid,
            evidence_rates,
            modes,
            iterations,
            runs,
            master_seed,
            snapshot_interval,
            sample_pairs,
            output_dir
        );
        self
    }

    /// Fills unset fields from the defaults of the chosen experiment
    /// (`random` when none is given) and validates the result.
    pub fn resolve(self) -> Result<ExperimentConfig, HarnessError> {
        let experiment = self.experiment.unwrap_or(Experiment::Random);
        let d = ExperimentConfig::defaults(experiment);
        let cfg = ExperimentConfig {
            experiment,
            agents: self.agents.unwrap_or(d.agents),
            language_sizes: self.language_sizes.unwrap_or(d.language_sizes),
            gamma_grid: self.gamma_grid.unwrap_or(d.gamma_grid),
            evidence_rates: self.evidence_rates.unwrap_or(d.evidence_rates),
            modes: self.modes.unwrap_or(d.modes),
            iterations: self.iterations.unwrap_or(d.iterations),
            runs: self.runs.unwrap_or(d.runs),
            master_seed: self.master_seed.unwrap_or(d.master_seed),
            snapshot_interval: self.snapshot_interval.unwrap_or(d.snapshot_interval),
            sample_pairs: self.sample_pairs.unwrap_or(d.sample_pairs),
            output_dir: self.output_dir.unwrap_or(d.output_dir),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, HarnessError>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| HarnessError::usage(key, format!("`{value}`: {e}")))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, HarnessError>
where
    T::Err: fmt::Display,
{
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value.split(',').map(|v| parse_num(key, v.trim())).collect()
}

pub fn parse_modes(value: &str) -> Result<Vec<Mode>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Mode::from_name(s).ok_or_else(|| format!("unknown mode `{s}`")))
        .collect()
}

/// Parses either an inclusive range `start:stop:step` or a comma-separated
/// list of values.
pub fn parse_grid(value: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"));
    let parts: Vec<&str> = value.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(num).collect(),
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start {
                return Err(format!("`{value}`: need start <= stop and step > 0"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            // Round away accumulated binary error so 0.3 prints as 0.3.
            Ok((0..count)
                .map(|k| {
                    let x = start + k as f64 * step;
                    format!("{x:.10}").parse::<f64>().expect("formatted float parses")
                })
                .collect())
        }
        _ => Err(format!("`{value}`: expected start:stop:step or a comma-separated list")),
    }
}
