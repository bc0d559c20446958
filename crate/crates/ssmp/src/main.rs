//! Thin command-line front end: recover from matrix files, run benchmark
//! sweeps from a JSON config, and print guarantee-verifier reports.
//!
//! Exit codes: 0 success, 2 invalid input, 3 guarantee not computable at
//! this instance size.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ssmp::experiments::{emit_csv, run_sweep, ExperimentConfig, ExperimentError, Metric};
use ssmp::io::{read_matrix_csv, write_matrix_csv};
use ssmp::recovery::{
    ssmp_recover, ssmp_recover_extended, ObservationMatrix, SamplingMatrix, SsmpConfig,
};
use ssmp::verify::{
    fundamental_limit, krank, rip_constant, extended_iteration_guarantee, exact_recovery_bound_report,
    exact_recovery_guarantee, GuaranteeStatus, VerifyError,
};

const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_NOT_COMPUTABLE: u8 = 3;

#[derive(Parser)]
#[command(name = "ssmp", about = "Joint sparse recovery toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recover a row-sparse signal from matrix and observation CSV files.
    Recover(RecoverArgs),
    /// Run a Monte Carlo sweep described by a JSON config.
    Bench(BenchArgs),
    /// Exhaustive verifiers and guarantee calculators.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Args)]
struct RecoverArgs {
    /// Sampling matrix CSV (m rows).
    #[arg(long)]
    matrix: PathBuf,
    /// Observation matrix CSV (m rows, r columns).
    #[arg(long)]
    obs: PathBuf,
    /// Target sparsity K.
    #[arg(long)]
    sparsity: usize,
    /// Indices selected per iteration.
    #[arg(long = "L")]
    per_iteration: usize,
    /// Stopping threshold (default 0).
    #[arg(long = "eps")]
    epsilon: Option<f64>,
    /// Run this many iterations instead of the default cap.
    #[arg(long = "extended-iters")]
    extended_iterations: Option<usize>,
    /// Where to write the estimate CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Aggregated metric: err, esrr, or mse.
    #[arg(long)]
    metric: String,
    /// Sweep configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Draw one sampling matrix per grid point instead of one per trial.
    #[arg(long = "fixed-matrix")]
    fixed_matrix: bool,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Exhaustive Kruskal rank of a matrix.
    Krank {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Exhaustive RIP constant of one order.
    Rip {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Exact-recovery guarantee predicates.
    Guarantee {
        #[arg(long = "K")]
        sparsity: usize,
        #[arg(long = "r")]
        rank: Option<usize>,
        #[arg(long = "L")]
        per_iteration: usize,
        /// Measure the RIP constant / Kruskal rank of this matrix.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Evaluate the extended-iteration family at this c >= 2 instead.
        #[arg(long = "c")]
        extended_c: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

enum CliError {
    InvalidInput(String),
    NotComputable(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidInput(_) => EXIT_INVALID_INPUT,
            CliError::NotComputable(_) => EXIT_NOT_COMPUTABLE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::InvalidInput(m) | CliError::NotComputable(m) => f.write_str(m),
        }
    }
}

fn invalid(err: impl std::fmt::Display) -> CliError {
    CliError::InvalidInput(err.to_string())
}

fn from_verify(err: VerifyError) -> CliError {
    match err {
        VerifyError::SizeGuardExceeded { .. } => CliError::NotComputable(err.to_string()),
        VerifyError::InvalidInput(_) => CliError::InvalidInput(err.to_string()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Recover(args) => recover(args),
        Command::Bench(args) => bench(args),
        Command::Check(check) => match check {
            CheckCommand::Krank { matrix } => check_krank(matrix),
            CheckCommand::Rip { matrix, order } => check_rip(matrix, order),
            CheckCommand::Guarantee { sparsity, rank, per_iteration, matrix, extended_c } => {
                check_guarantee(sparsity, rank, per_iteration, matrix, extended_c)
            }
        },
    }
}

fn load_sampling(path: &PathBuf) -> Result<SamplingMatrix, CliError> {
    let matrix = read_matrix_csv(path).map_err(invalid)?;
    SamplingMatrix::new(matrix).map_err(invalid)
}

fn recover(args: RecoverArgs) -> Result<ExitCode, CliError> {
    let a = load_sampling(&args.matrix)?;
    let y = ObservationMatrix::new(read_matrix_csv(&args.obs).map_err(invalid)?).map_err(invalid)?;
    let cfg = SsmpConfig::new(args.sparsity, args.per_iteration)
        .with_epsilon(args.epsilon.unwrap_or(0.0));
    let result = match args.extended_iterations {
        Some(total) => ssmp_recover_extended(&a, &y, &cfg, total),
        None => ssmp_recover(&a, &y, &cfg),
    }
    .map_err(invalid)?;
    write_matrix_csv(&args.out, &result.estimate).map_err(invalid)?;
    let support: Vec<String> = result.support.indices().iter().map(|i| i.to_string()).collect();
    println!("support: {}", support.join(" "));
    println!("iterations: {}", result.iterations_run);
    println!("stop_reason: {}", result.stop_reason);
    if let Some(last) = result.trace.last() {
        println!("residual_frobenius: {}", last.residual_norm);
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(args: BenchArgs) -> Result<ExitCode, CliError> {
    let metric: Metric = args.metric.parse().map_err(CliError::InvalidInput)?;
    let text = std::fs::read_to_string(&args.config).map_err(invalid)?;
    let mut cfg = ExperimentConfig::from_json(&text, metric).map_err(|e| match e {
        ExperimentError::InvalidConfig(msg) => CliError::InvalidInput(msg),
        other => CliError::InvalidInput(other.to_string()),
    })?;
    cfg.fixed_matrix |= args.fixed_matrix;
    let (_, table) = run_sweep(&cfg).map_err(invalid)?;
    std::fs::write(&args.out, emit_csv(&table)).map_err(invalid)?;
    println!("wrote {} rows to {}", table.rows.len(), args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn check_krank(matrix: PathBuf) -> Result<ExitCode, CliError> {
    let a = load_sampling(&matrix)?;
    let value = krank(&a).map_err(from_verify)?;
    println!("predicate = krank");
    println!("krank = {value}");
    println!("measurements = {}", a.measurements());
    println!("dimension = {}", a.dimension());
    Ok(ExitCode::SUCCESS)
}

fn check_rip(matrix: PathBuf, order: usize) -> Result<ExitCode, CliError> {
    let a = load_sampling(&matrix)?;
    let est = rip_constant(&a, order).map_err(from_verify)?;
    println!("predicate = rip");
    println!("order = {}", est.order);
    println!("delta = {}", est.delta);
    println!("exhaustive = {}", est.exhaustive);
    println!("holds = {}", est.holds());
    Ok(ExitCode::SUCCESS)
}

fn check_guarantee(
    sparsity: usize,
    rank: Option<usize>,
    per_iteration: usize,
    matrix: Option<PathBuf>,
    extended_c: Option<usize>,
) -> Result<ExitCode, CliError> {
    if let Some(c) = extended_c {
        let report = extended_iteration_guarantee(c, sparsity, per_iteration).map_err(from_verify)?;
        print!("{}", report.to_kv_lines());
        return Ok(ExitCode::SUCCESS);
    }
    let rank = rank.ok_or_else(|| {
        CliError::InvalidInput("--r is required unless --c selects the extended family".into())
    })?;
    let report = match &matrix {
        Some(path) => {
            let a = load_sampling(path)?;
            exact_recovery_guarantee(&a, sparsity, rank, per_iteration)
        }
        None => exact_recovery_bound_report(sparsity, rank, per_iteration).map_err(from_verify)?,
    };
    print!("{}", report.to_kv_lines());
    let limit = fundamental_limit(sparsity, rank).map_err(from_verify)?;
    println!("fundamental_limit_measurements = {limit}");
    if matrix.is_some() && report.status == GuaranteeStatus::NotComputable {
        return Err(CliError::NotComputable(
            "guarantee operands not computable at this size".into(),
        ));
    }
    Ok(ExitCode::SUCCESS)
}
