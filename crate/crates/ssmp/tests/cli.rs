//! End-to-end checks of the `ssmp` binary: file formats, subcommand output,
//! and exit codes (0 success, 2 invalid input, 3 not computable at size).

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use ssmp::experiments::{generate_sampling_matrix, parse_results_csv};
use ssmp::io::{matrix_to_csv, parse_matrix_csv};
use ssmp::linalg::DenseMatrix;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ssmp"))
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ssmp-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

#[test]
fn recover_round_trips_a_planted_instance() {
    let dir = workdir("recover");
    let a = generate_sampling_matrix(12, 24, 42).unwrap();
    // Plant x with support {3, 17}, coefficients 2 and -1.
    let mut x = DenseMatrix::zeros(24, 1);
    x.set(3, 0, 2.0);
    x.set(17, 0, -1.0);
    let y = a.matrix().matmul(&x);
    fs::write(dir.join("a.csv"), matrix_to_csv(a.matrix())).unwrap();
    fs::write(dir.join("y.csv"), matrix_to_csv(&y)).unwrap();

    let out = run(bin()
        .args(["recover", "--matrix"])
        .arg(dir.join("a.csv"))
        .arg("--obs")
        .arg(dir.join("y.csv"))
        .args(["--sparsity", "2", "--L", "1", "--out"])
        .arg(dir.join("est.csv")));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("support: 3 17"), "stdout was: {stdout}");
    assert!(stdout.contains("stop_reason: epsilon-met"));

    let estimate = parse_matrix_csv(&fs::read_to_string(dir.join("est.csv")).unwrap()).unwrap();
    assert!((estimate.get(3, 0) - 2.0).abs() < 1e-8);
    assert!((estimate.get(17, 0) + 1.0).abs() < 1e-8);
    assert!(estimate.sub(&x).frobenius_norm() < 1e-8);
}

#[test]
fn recover_honors_the_extended_iteration_budget() {
    let dir = workdir("extended");
    let a = generate_sampling_matrix(16, 24, 43).unwrap();
    let mut x = DenseMatrix::zeros(24, 1);
    x.set(5, 0, 1.0);
    x.set(9, 0, -0.5);
    let y = a.matrix().matmul(&x);
    fs::write(dir.join("a.csv"), matrix_to_csv(a.matrix())).unwrap();
    fs::write(dir.join("y.csv"), matrix_to_csv(&y)).unwrap();

    let out = run(bin()
        .args(["recover", "--matrix"])
        .arg(dir.join("a.csv"))
        .arg("--obs")
        .arg(dir.join("y.csv"))
        .args(["--sparsity", "2", "--L", "1", "--extended-iters", "8", "--out"])
        .arg(dir.join("est.csv")));
    assert!(out.status.success());

    // Budget beyond the measurement count must be rejected as invalid input.
    let out = run(bin()
        .args(["recover", "--matrix"])
        .arg(dir.join("a.csv"))
        .arg("--obs")
        .arg(dir.join("y.csv"))
        .args(["--sparsity", "2", "--L", "1", "--extended-iters", "17", "--out"])
        .arg(dir.join("est.csv")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_writes_deterministic_csv() {
    let dir = workdir("bench");
    // Gaussian signals keep the rank condition (hence exactness) almost
    // surely; tiny 2-PAM blocks can be rank deficient and miss.
    let config = r#"{
        "m": 16, "n": 48, "r": "K",
        "K_grid": [2, 4],
        "algorithms": ["ssmp-L2", "oracle-ls"],
        "trials": 25, "seed": 99,
        "signal_model": "gaussian",
        "epsilon_mode": "zero"
    }"#;
    fs::write(dir.join("cfg.json"), config).unwrap();
    for name in ["run1.csv", "run2.csv"] {
        let out = run(bin()
            .args(["bench", "--metric", "err", "--config"])
            .arg(dir.join("cfg.json"))
            .arg("--out")
            .arg(dir.join(name)));
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let run1 = fs::read(dir.join("run1.csv")).unwrap();
    let run2 = fs::read(dir.join("run2.csv")).unwrap();
    assert_eq!(run1, run2, "bench output must be byte-identical across runs");

    let text = String::from_utf8(run1).unwrap();
    assert!(text.starts_with("grid,algorithm,metric,value,trials,seed\n"));
    let table = parse_results_csv(&text).unwrap();
    assert_eq!(table.rows.len(), 4);
    for row in &table.rows {
        assert_eq!(row.value, 1.0, "full-row-rank sweep should be exact");
    }
}

#[test]
fn bench_rejects_bad_configs_with_exit_2() {
    let dir = workdir("badcfg");
    fs::write(dir.join("cfg.json"), r#"{"m": 8}"#).unwrap();
    let out = run(bin()
        .args(["bench", "--metric", "err", "--config"])
        .arg(dir.join("cfg.json"))
        .arg("--out")
        .arg(dir.join("out.csv")));
    assert_eq!(out.status.code(), Some(2));

    // Unavailable baseline names get an explicit message, not silence.
    let config = r#"{
        "m": 16, "n": 48, "r": 2,
        "K_grid": [2],
        "algorithms": ["sa-music"],
        "trials": 5, "seed": 1,
        "signal_model": "gaussian",
        "epsilon_mode": "zero"
    }"#;
    fs::write(dir.join("cfg.json"), config).unwrap();
    let out = run(bin()
        .args(["bench", "--metric", "err", "--config"])
        .arg(dir.join("cfg.json"))
        .arg("--out")
        .arg(dir.join("out.csv")));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unavailable"));
}

#[test]
fn matrix_files_with_ragged_rows_are_rejected() {
    let dir = workdir("ragged");
    fs::write(dir.join("a.csv"), "1,2,3\n4,5\n").unwrap();
    let out = run(bin().args(["check", "krank", "--matrix"]).arg(dir.join("a.csv")));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ragged"));
}

#[test]
fn check_krank_and_rip_print_flat_key_values() {
    let dir = workdir("check");
    let a = generate_sampling_matrix(4, 8, 7).unwrap();
    fs::write(dir.join("a.csv"), matrix_to_csv(a.matrix())).unwrap();

    let out = run(bin().args(["check", "krank", "--matrix"]).arg(dir.join("a.csv")));
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("krank = 4"), "stdout: {stdout}");

    let out = run(bin().args(["check", "rip", "--matrix"]).arg(dir.join("a.csv")).args(["--order", "2"]));
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("delta = "));
    assert!(stdout.contains("exhaustive = true"));
}

#[test]
fn check_guards_return_exit_3_when_enumeration_is_infeasible() {
    let dir = workdir("guard");
    let a = generate_sampling_matrix(8, 40, 7).unwrap();
    fs::write(dir.join("a.csv"), matrix_to_csv(a.matrix())).unwrap();

    // krank guard: n = 40 > 24.
    let out = run(bin().args(["check", "krank", "--matrix"]).arg(dir.join("a.csv")));
    assert_eq!(out.status.code(), Some(3));

    // RIP guard: C(40, 8) far beyond the enumeration cap.
    let out = run(bin().args(["check", "rip", "--matrix"]).arg(dir.join("a.csv")).args(["--order", "8"]));
    assert_eq!(out.status.code(), Some(3));

    // Guarantee with a matrix whose delta is not computable: exit 3.
    let big = generate_sampling_matrix(30, 600, 3).unwrap();
    fs::write(dir.join("big.csv"), matrix_to_csv(big.matrix())).unwrap();
    let out = run(bin()
        .args(["check", "guarantee", "--K", "6", "--r", "3", "--L", "2", "--matrix"])
        .arg(dir.join("big.csv")));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_guarantee_prints_bounds_without_a_matrix() {
    let out = run(bin().args(["check", "guarantee", "--K", "4", "--r", "2", "--L", "2"]));
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("bound_value = 0.5"), "stdout: {stdout}");
    assert!(stdout.contains("fundamental_limit_measurements = 7"));

    let out = run(bin().args(["check", "guarantee", "--K", "10", "--L", "1", "--c", "2"]));
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("predicate = extended-iteration"));
    assert!(stdout.contains("iteration_budget = 80"));

    // --r is mandatory without --c.
    let out = run(bin().args(["check", "guarantee", "--K", "4", "--L", "2"]));
    assert_eq!(out.status.code(), Some(2));
}
