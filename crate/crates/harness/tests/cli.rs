use std::fs;
use std::path::Path;

use vague_consensus_harness::cli::main_with_args;
use vague_consensus_harness::output::{parse_summary_line, SERIES_HEADER, SUMMARY_HEADER};

fn vcsim(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("vcsim").chain(args.iter().copied()))
}

fn read(p: &Path) -> String {
    fs::read_to_string(p).unwrap()
}

#[test]
fn sweep_writes_every_declared_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let code = vcsim(&[
        "sweep",
        "--experiment",
        "random",
        "--agents",
        "60",
        "--language-sizes",
        "1,3",
        "--gamma-grid",
        "0.2,0.6",
        "--iterations",
        "1000",
        "--snapshot-interval",
        "100",
        "--runs",
        "3",
        "--seed",
        "9",
        "--jobs",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    let summary = read(&out.join("summary.csv"));
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], SUMMARY_HEADER);
    assert_eq!(lines.len(), 1 + 2 * 2);
    for l in &lines[1..] {
        let (_, _, _, _, _, nums) = parse_summary_line(l).expect("row parses");
        assert!(nums.iter().all(|x| x.is_finite()));
    }
    for id in 1..=4 {
        assert!(out.join(format!("figure_{id}.csv")).exists());
    }
    assert!(read(&out.join("resolved_config.txt")).contains("master_seed = 9"));

    let series: Vec<_> = fs::read_dir(out.join("series")).unwrap().collect();
    assert_eq!(series.len(), 2 * 2 * 3);
    let one = read(&out.join("series/random_consensus_only_n3_g0.6_a0_run2.csv"));
    assert_eq!(one.lines().next(), Some(SERIES_HEADER));
    assert_eq!(one.lines().count(), 1000 / 100 + 2);
}

#[test]
fn summary_means_recompute_from_series() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let code = vcsim(&[
        "sweep",
        "--experiment",
        "quality",
        "--agents",
        "40",
        "--gamma-grid",
        "0.3,0.9",
        "--iterations",
        "700",
        "--runs",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let summary = read(&out.join("summary.csv"));
    for line in summary.lines().skip(1) {
        let (exp, mode, n, gamma, alpha, nums) = parse_summary_line(line).unwrap();
        let runs = nums[0] as usize;
        let stem = format!("{exp}_{}_n{n}_g{gamma}_a{alpha}", mode.name());
        let mut sums = [0.0f64; 5];
        for r in 0..runs {
            let text = read(&out.join(format!("series/{stem}_run{r}.csv")));
            let last: Vec<f64> = text.lines().last().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(last[0], 700.0);
            for (k, s) in sums.iter_mut().enumerate() {
                *s += last[k + 1];
            }
        }
        for (k, s) in sums.iter().enumerate() {
            let mean = nums[1 + 2 * k];
            assert!((s / runs as f64 - mean).abs() < 1e-9, "{stem} column {k}");
        }
    }
}

#[test]
fn identical_sweeps_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| {
        let out = dir.path().join(name);
        let code = vcsim(&[
            "sweep",
            "--experiment",
            "evidence",
            "--agents",
            "50",
            "--gamma-grid",
            "0.5,0.8",
            "--evidence-rates",
            "0.3",
            "--iterations",
            "600",
            "--runs",
            "3",
            "--seed",
            "123",
            "--jobs",
            jobs,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        out
    };
    let a = run("a", "1");
    let b = run("b", "3");
    assert_eq!(fs::read(a.join("summary.csv")).unwrap(), fs::read(b.join("summary.csv")).unwrap());
    assert_eq!(fs::read(a.join("figure_6.csv")).unwrap(), fs::read(b.join("figure_6.csv")).unwrap());
}

#[test]
fn config_file_is_layered_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.conf");
    let out = dir.path().join("o");
    fs::write(
        &cfg,
        format!(
            "experiment = random\nagents = 30\nlanguage_sizes = 2\ngamma_grid = 0.4\niterations = 200\nruns = 5\noutput_dir = {}\n",
            out.display()
        ),
    )
    .unwrap();
    assert_eq!(vcsim(&["run", "--config", cfg.to_str().unwrap(), "--runs", "2"]), 0);
    let resolved = read(&out.join("resolved_config.txt"));
    assert!(resolved.contains("runs = 2"));
    assert!(resolved.contains("agents = 30"));
    assert_eq!(read(&out.join("summary.csv")).lines().count(), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(vcsim(&["run", "--evidence-rate", "0.3", "--experiment", "random"]), 2);
    assert_eq!(vcsim(&["sweep", "--gamma-grid", "0:2:0.5"]), 2);
    assert_eq!(vcsim(&["sweep", "--runs", "0"]), 2);
    assert_eq!(vcsim(&["sweep", "--frobnicate"]), 2);
    // default random grid spans many cells
    assert_eq!(vcsim(&["run"]), 2);

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(vcsim(&["sweep", "--config", cfg.to_str().unwrap()]), 2);
}

#[test]
fn unwritable_output_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let out = blocker.join("o");
    let code = vcsim(&[
        "run",
        "--gamma",
        "0.5",
        "--language-size",
        "1",
        "--agents",
        "10",
        "--iterations",
        "10",
        "--runs",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
}

#[test]
fn verify_passes() {
    assert_eq!(vcsim(&["verify", "--cases", "5000"]), 0);
}
