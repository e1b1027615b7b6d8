use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use vague_consensus::verify::oracle_suite;

use crate::config::{parse_grid, parse_modes, ConfigOverrides, Experiment, ExperimentConfig};
use crate::error::HarnessError;
use crate::output::{summary_csv, write_outputs};
use crate::sweep::{cells, execute_sweep};

#[derive(Debug, Parser)]
#[command(name = "vcsim", version, about = "Consensus formation with vague and uncertain beliefs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a single grid cell.
    Run(SimArgs),
    /// Simulate the full parameter grid.
    Sweep(SimArgs),
    /// Check the consensus operator against its independent oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SimArgs {
    /// Flat `key = value` configuration file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// random, evidence or quality.
    #[arg(long)]
    pub experiment: Option<Experiment>,
    #[arg(long)]
    pub agents: Option<usize>,
    /// Language size(s), comma separated.
    #[arg(long = "language-size", visible_alias = "language-sizes", value_delimiter = ',')]
    pub language_sizes: Vec<usize>,
    /// A single inconsistency threshold.
    #[arg(long, conflicts_with = "gamma_grid")]
    pub gamma: Option<f64>,
    /// Threshold grid, `start:stop:step` (inclusive) or a comma-separated list.
    #[arg(long = "gamma-grid")]
    pub gamma_grid: Option<String>,
    /// Per-iteration evidence probability(ies), comma separated.
    #[arg(long = "evidence-rate", visible_alias = "evidence-rates", value_delimiter = ',')]
    pub evidence_rates: Vec<f64>,
    /// consensus_plus_evidence and/or evidence_only (evidence experiment).
    #[arg(long, visible_alias = "modes")]
    pub mode: Option<String>,
    #[arg(long)]
    pub iterations: Option<u64>,
    #[arg(long)]
    pub runs: Option<usize>,
    /// Master seed from which every run's stream is derived.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "snapshot-interval")]
    pub snapshot_interval: Option<u64>,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "VC_JOBS", default_value_t = 0)]
    pub jobs: usize,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Random cases per check.
    #[arg(long, default_value_t = 100_000)]
    pub cases: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SimArgs {
    fn overrides(&self) -> Result<ConfigOverrides, HarnessError> {
        let gamma_grid = match (&self.gamma, &self.gamma_grid) {
            (Some(g), _) => Some(vec![*g]),
            (None, Some(spec)) => Some(parse_grid(spec).map_err(|m| HarnessError::usage("gamma_grid", m))?),
            (None, None) => None,
        };
        let modes = self
            .mode
            .as_deref()
            .map(|m| parse_modes(m).map_err(|e| HarnessError::usage("modes", e)))
            .transpose()?;
        Ok(ConfigOverrides {
            experiment: self.experiment,
            agents: self.agents,
            language_sizes: non_empty(&self.language_sizes),
            gamma_grid,
            evidence_rates: non_empty(&self.evidence_rates),
            modes,
            iterations: self.iterations,
            runs: self.runs,
            master_seed: self.seed,
            snapshot_interval: self.snapshot_interval,
            sample_pairs: None,
            output_dir: self.out.clone(),
        })
    }

    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<ExperimentConfig, HarnessError> {
        let base = match &self.config {
            Some(path) => ConfigOverrides::from_file(path)?,
            None => ConfigOverrides::default(),
        };
        base.overlay(self.overrides()?).resolve()
    }
}

fn non_empty<T: Clone>(v: &[T]) -> Option<Vec<T>> {
    (!v.is_empty()).then(|| v.to_vec())
}

fn simulate(args: &SimArgs, single_cell: bool) -> Result<(), HarnessError> {
    let cfg = args.resolve()?;
    let count = cells(&cfg).len();
    if single_cell && count != 1 {
        return Err(HarnessError::usage(
            "run",
            format!("`run` simulates one cell but the configuration spans {count}; use `sweep` or narrow the grid"),
        ));
    }
    log::info!("{count} cells x {} runs into {}", cfg.runs, cfg.output_dir.display());
    let outcome = execute_sweep(&cfg, args.jobs)?;
    write_outputs(&cfg, &outcome)?;
    if single_cell {
        print!("{}", summary_csv(&outcome.rows));
    } else {
        println!("wrote {} rows to {}", outcome.rows.len(), cfg.output_dir.join("summary.csv").display());
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> i32 {
    let mut failed = 0;
    for check in oracle_suite(args.cases, args.seed) {
        match &check.failure {
            None => println!("PASS  {} ({} cases)", check.name, check.cases),
            Some(why) => {
                failed += 1;
                println!("FAIL  {}: {}", check.name, why);
            }
        }
    }
    if failed == 0 {
        0
    } else {
        1
    }
}

/// Parses `args` and runs the command, returning the process exit code:
/// 0 success, 1 failed verification, 2 usage or configuration error,
/// 3 I/O error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Run(a) => simulate(a, true),
        Command::Sweep(a) => simulate(a, false),
        Command::Verify(a) => return verify(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
