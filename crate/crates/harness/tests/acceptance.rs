//! Acceptance criteria. Each test prints one PASS/FAIL line and asserts.
//!
//! Full-size simulations (1000 agents, 50,000 iterations) under the default
//! master seed; run with `cargo test -p vague-consensus-harness --test
//! acceptance -- --nocapture` to see the report.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;
use vague_consensus::sim::rng::stream;
use vague_consensus::sim::{Mode, RunOutput};
use vague_consensus::verify::{oracle_suite, random_state};
use vague_consensus::{consensus_belief, consensus_belief_enum_oracle, ds_union_combine_oracle, BeliefState};
use vague_consensus_harness::cli::main_with_args;
use vague_consensus_harness::{simulate_cell, CellKey, Experiment, ExperimentConfig};

const ORACLE_TOL: f64 = 1e-12;

fn report(id: u32, name: &str, ok: bool, detail: String) {
    println!("{} criterion {id:>2} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn jobs() -> usize {
    std::env::var("VC_JOBS").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn cell_runs(experiment: Experiment, mode: Mode, n: usize, gamma: f64, alpha: f64, runs: usize) -> Vec<RunOutput> {
    let cfg = ExperimentConfig::defaults(experiment);
    let cell = CellKey { experiment, mode, n, gamma, alpha };
    simulate_cell(&cfg, &cell, runs, jobs()).expect("simulation")
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = xs.collect();
    v.iter().sum::<f64>() / v.len() as f64
}

struct FinalMeans {
    unique: f64,
    vagueness: f64,
    entropy: f64,
    inconsistency: f64,
    payoff_pct: f64,
}

fn final_means(runs: &[RunOutput]) -> FinalMeans {
    let f = |g: fn(&RunOutput) -> f64| mean(runs.iter().map(g));
    FinalMeans {
        unique: f(|r| r.final_snapshot().unique_beliefs as f64),
        vagueness: f(|r| r.final_snapshot().mean_vagueness),
        entropy: f(|r| r.final_snapshot().mean_entropy),
        inconsistency: f(|r| r.final_snapshot().mean_pairwise_inconsistency),
        payoff_pct: f(|r| r.final_snapshot().mean_payoff_pct),
    }
}

fn max_gap(a: &BeliefState, b: &BeliefState) -> f64 {
    a.pairs()
        .iter()
        .zip(b.pairs())
        .map(|(p, q)| (p.lower() - q.lower()).abs().max((p.upper() - q.upper()).abs()))
        .fold(0.0, f64::max)
}

#[test]
fn c01_operator_exactness() {
    let a = BeliefState::from_tuples(&[(0.6, 0.8)]).unwrap();
    let b = BeliefState::from_tuples(&[(0.4, 0.7)]).unwrap();
    let c = consensus_belief(&a, &b).unwrap().pairs()[0];
    let err = (c.lower() - 0.5).abs().max((c.upper() - 0.82).abs());
    report(1, "operator exactness", err <= ORACLE_TOL, format!("({}, {}), error {err:e}", c.lower(), c.upper()));
}

#[test]
fn c02_triple_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = stream(0x0a11);
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let n = rng.gen_range(1..=5);
        let (a, b) = (random_state(&mut rng, n), random_state(&mut rng, n));
        let closed = consensus_belief(&a, &b).unwrap();
        worst = worst
            .max(max_gap(&closed, &consensus_belief_enum_oracle(&a, &b).unwrap()))
            .max(max_gap(&closed, &ds_union_combine_oracle(&a, &b).unwrap()));
    }
    let elapsed = start.elapsed();
    report(
        2,
        "triple-oracle equivalence",
        worst <= ORACLE_TOL && elapsed < Duration::from_secs(5),
        format!("100000 pairs, worst gap {worst:e}, {elapsed:.2?}"),
    );
}

#[test]
fn c03_property_suite() {
    let start = Instant::now();
    let outcomes = oracle_suite(100_000, 0x5eed);
    let elapsed = start.elapsed();
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: {}", c.name, c.failure.as_deref().unwrap_or("")))
        .collect();
    report(
        3,
        "property suite",
        failed.is_empty() && elapsed < Duration::from_secs(10),
        format!("{} checks x 100000 cases, {elapsed:.2?}, failures {failed:?}", outcomes.len()),
    );
}

#[test]
fn c04_random_pairing_convergence() {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in [1, 3, 5] {
        for gamma in [0.5, 0.7, 0.9] {
            let m = final_means(&cell_runs(Experiment::Random, Mode::ConsensusOnly, n, gamma, 0.0, 25));
            let cell_ok = m.unique <= 1.5 && m.vagueness <= 0.01 && m.entropy <= 0.02;
            ok &= cell_ok;
            lines.push(format!(
                "n={n} γ={gamma}: unique {:.2} vagueness {:.4} entropy {:.4}{}",
                m.unique,
                m.vagueness,
                m.entropy,
                if cell_ok { "" } else { " <- fails" }
            ));
        }
    }
    report(4, "random-pairing convergence", ok, lines.join("; "));
}

#[test]
fn c05_polarisation() {
    let m = final_means(&cell_runs(Experiment::Random, Mode::ConsensusOnly, 1, 0.28, 0.0, 25));
    report(
        5,
        "polarisation at γ=0.28, n=1",
        (0.35..=0.60).contains(&m.inconsistency),
        format!("mean final pairwise inconsistency {:.4} (unique {:.1})", m.inconsistency, m.unique),
    );
}

#[test]
fn c06_initialisation_statistics() {
    let mut cfg = ExperimentConfig::defaults(Experiment::Random);
    cfg.iterations = 0;
    let cell = CellKey { experiment: Experiment::Random, mode: Mode::ConsensusOnly, n: 5, gamma: 0.5, alpha: 0.0 };
    let runs = simulate_cell(&cfg, &cell, 25, jobs()).unwrap();
    let inc = mean(runs.iter().map(|r| r.initial_snapshot().mean_pairwise_inconsistency));
    let vag = mean(runs.iter().map(|r| r.initial_snapshot().mean_vagueness));
    let ok = (inc - 2.0 / 9.0).abs() <= 0.01 && (vag - 1.0 / 3.0).abs() <= 0.01;
    report(6, "initialisation statistics", ok, format!("inconsistency {inc:.4} (2/9), vagueness {vag:.4} (1/3)"));
}

fn combined_evidence_runs() -> &'static [RunOutput] {
    static RUNS: OnceLock<Vec<RunOutput>> = OnceLock::new();
    RUNS.get_or_init(|| cell_runs(Experiment::Evidence, Mode::ConsensusPlusEvidence, 5, 0.8, 0.30, 20))
}

#[test]
fn c07_combined_versus_evidence_only() {
    let combined = combined_evidence_runs();
    let converged = combined
        .iter()
        .filter(|r| r.series.iter().any(|s| s.iteration <= 25_000 && s.unique_beliefs == 1))
        .count();
    let frac = converged as f64 / combined.len() as f64;

    let evidence_only = cell_runs(Experiment::Evidence, Mode::EvidenceOnly, 5, 0.8, 0.30, 20);
    let remaining: Vec<usize> = evidence_only
        .iter()
        .map(|r| r.at(50_000).expect("snapshot at 50,000").unique_beliefs)
        .collect();
    let min_remaining = *remaining.iter().min().unwrap();
    let ok = frac >= 0.9 && min_remaining > 400;
    report(
        7,
        "combined vs evidence-only",
        ok,
        format!("combined converged by 25k in {converged}/20 runs; evidence-only min unique at 50k {min_remaining}"),
    );
}

#[test]
fn c08_truth_tracking() {
    let m = final_means(combined_evidence_runs());
    report(
        8,
        "truth tracking (γ=0.8, α=0.3)",
        m.payoff_pct >= 90.0,
        format!("mean final payoff {:.2}% of maximum", m.payoff_pct),
    );
}

#[test]
fn c09_quality_guided_convergence() {
    let mut lines = Vec::new();
    let mut ok = true;
    for gamma in [0.5, 0.7, 0.9] {
        let m = final_means(&cell_runs(Experiment::Quality, Mode::ConsensusOnly, 5, gamma, 0.0, 25));
        let cell_ok = m.unique <= 1.5 && m.vagueness <= 0.01 && m.payoff_pct >= 75.0;
        ok &= cell_ok;
        lines.push(format!(
            "γ={gamma}: unique {:.2} vagueness {:.5} payoff {:.1}%{}",
            m.unique,
            m.vagueness,
            m.payoff_pct,
            if cell_ok { "" } else { " <- fails" }
        ));
    }
    report(9, "quality-guided convergence", ok, lines.join("; "));
}

#[test]
fn c10_sweep_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = |name: &str| {
        let out = dir.path().join(name);
        let code = main_with_args([
            "vcsim",
            "sweep",
            "--experiment",
            "random",
            "--agents",
            "200",
            "--language-sizes",
            "1,3",
            "--gamma-grid",
            "0.2:0.8:0.3",
            "--iterations",
            "5000",
            "--runs",
            "4",
            "--seed",
            "31337",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        std::fs::read(out.join("summary.csv")).unwrap()
    };
    let (a, b) = (sweep("first"), sweep("second"));
    report(
        10,
        "sweep determinism",
        a == b,
        format!("summary.csv {} bytes, identical: {}", a.len(), a == b),
    );
}
