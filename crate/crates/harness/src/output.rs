//! CSV writers for summaries, per-run series and per-figure extracts.
//!
//! Numbers are written with Rust's shortest round-trip `Display` form, '.'
//! as decimal separator and LF line endings. Every file is written to a
//! temporary sibling and renamed into place.

use std::fmt::Write as _;
use std::path::Path;

use vague_consensus::sim::{MetricsSnapshot, Mode};

use crate::config::{Experiment, ExperimentConfig};
use crate::error::HarnessError;
use crate::sweep::{AggregateRow, Stat, SweepOutcome, Trajectory};

pub const SUMMARY_HEADER: &str = "experiment,mode,n,gamma,alpha,runs,unique_mean,unique_sd,vagueness_mean,vagueness_sd,entropy_mean,entropy_sd,inconsistency_mean,inconsistency_sd,payoff_pct_mean,payoff_pct_sd";

pub const SERIES_HEADER: &str =
    "iteration,unique_beliefs,mean_vagueness,mean_entropy,mean_pairwise_inconsistency,mean_payoff_pct";

pub const FIGURE_HEADER: &str = "mode,n,alpha,gamma,mean,sd";

pub const TRAJECTORY_HEADER: &str = "mode,n,alpha,gamma,iteration,unique_mean";

pub fn write_atomic(path: &Path, contents: &str) -> Result<(), HarnessError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, contents).map_err(|e| HarnessError::io(path, e))?;
    std::fs::rename(&tmp, path).map_err(|e| HarnessError::io(path, e))
}

pub fn series_csv(series: &[MetricsSnapshot]) -> String {
    let mut s = String::with_capacity(64 * (series.len() + 1));
    s.push_str(SERIES_HEADER);
    s.push('\n');
    for m in series {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            m.iteration,
            m.unique_beliefs,
            m.mean_vagueness,
            m.mean_entropy,
            m.mean_pairwise_inconsistency,
            m.mean_payoff_pct
        );
    }
    s
}

pub fn summary_csv(rows: &[AggregateRow]) -> String {
    let mut s = String::new();
    s.push_str(SUMMARY_HEADER);
    s.push('\n');
    for r in rows {
        let c = &r.cell;
        let _ = write!(s, "{},{},{},{},{},{}", c.experiment, c.mode.name(), c.n, c.gamma, c.alpha, r.runs);
        for stat in [r.unique, r.vagueness, r.entropy, r.inconsistency, r.payoff_pct] {
            let _ = write!(s, ",{},{}", stat.mean, stat.sd);
        }
        s.push('\n');
    }
    s
}

/// Which summary column a figure plots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureMetric {
    Unique,
    Vagueness,
    Entropy,
    Inconsistency,
    Payoff,
}

impl FigureMetric {
    fn pick(self, r: &AggregateRow) -> Stat {
        match self {
            FigureMetric::Unique => r.unique,
            FigureMetric::Vagueness => r.vagueness,
            FigureMetric::Entropy => r.entropy,
            FigureMetric::Inconsistency => r.inconsistency,
            FigureMetric::Payoff => r.payoff_pct,
        }
    }
}

/// Figure numbers and metrics extracted from the summary of one experiment.
/// The evidence trajectory (figure 6) comes from the run series instead.
pub fn figure_layout(experiment: Experiment) -> &'static [(u32, FigureMetric)] {
    use FigureMetric::*;
    match experiment {
        Experiment::Random => &[(1, Unique), (2, Vagueness), (3, Entropy), (4, Inconsistency)],
        Experiment::Evidence => &[(5, Unique), (7, Vagueness), (8, Entropy), (9, Inconsistency), (10, Payoff)],
        Experiment::Quality => &[(11, Unique), (12, Vagueness), (13, Entropy), (14, Inconsistency), (15, Payoff)],
    }
}

pub const TRAJECTORY_FIGURE: u32 = 6;

pub fn figure_csv(rows: &[AggregateRow], metric: FigureMetric) -> String {
    let mut s = String::new();
    s.push_str(FIGURE_HEADER);
    s.push('\n');
    for r in rows {
        let st = metric.pick(r);
        let c = &r.cell;
        let _ = writeln!(s, "{},{},{},{},{},{}", c.mode.name(), c.n, c.alpha, c.gamma, st.mean, st.sd);
    }
    s
}

pub fn trajectory_csv(trajectories: &[Trajectory]) -> String {
    let mut s = String::new();
    s.push_str(TRAJECTORY_HEADER);
    s.push('\n');
    for t in trajectories {
        let c = &t.cell;
        for &(it, u) in &t.points {
            let _ = writeln!(s, "{},{},{},{},{},{}", c.mode.name(), c.n, c.alpha, c.gamma, it, u);
        }
    }
    s
}

/// Writes `summary.csv`, the figure extracts and `resolved_config.txt`.
/// Per-run series are written by the sweep itself.
pub fn write_outputs(cfg: &ExperimentConfig, outcome: &SweepOutcome) -> Result<(), HarnessError> {
    let dir = &cfg.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    write_atomic(&dir.join("summary.csv"), &summary_csv(&outcome.rows))?;
    for &(id, metric) in figure_layout(cfg.experiment) {
        write_atomic(&dir.join(format!("figure_{id}.csv")), &figure_csv(&outcome.rows, metric))?;
    }
    if cfg.experiment == Experiment::Evidence && !outcome.trajectories.is_empty() {
        write_atomic(
            &dir.join(format!("figure_{TRAJECTORY_FIGURE}.csv")),
            &trajectory_csv(&outcome.trajectories),
        )?;
    }
    write_resolved_config(cfg)
}

pub fn write_resolved_config(cfg: &ExperimentConfig) -> Result<(), HarnessError> {
    let dir = &cfg.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    write_atomic(&dir.join("resolved_config.txt"), &cfg.render())
}

/// Parses a line of `summary.csv` back into its key and numeric columns.
pub fn parse_summary_line(line: &str) -> Option<(String, Mode, usize, f64, f64, Vec<f64>)> {
    let cols: Vec<&str> = line.split(',').collect();
    if cols.len() != SUMMARY_HEADER.split(',').count() {
        return None;
    }
    let nums = cols[5..].iter().map(|c| c.parse::<f64>().ok()).collect::<Option<Vec<_>>>()?;
    Some((
        cols[0].to_string(),
        Mode::from_name(cols[1])?,
        cols[2].parse().ok()?,
        cols[3].parse().ok()?,
        cols[4].parse().ok()?,
        nums,
    ))
}
