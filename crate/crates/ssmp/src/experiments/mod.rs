//! Monte Carlo benchmark harness: trial generation, sweep execution,
//! aggregation, and CSV emission.
//!
//! A sweep walks one grid axis (sparsity, measurement count, or SNR), runs
//! `trials` independent instances per point and algorithm, and aggregates one
//! metric. Per-trial seeds derive from `(master seed, grid index, trial
//! index, purpose)`, so trials are independent of execution order and worker
//! count: running on one thread or eight produces byte-identical CSV.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;

use crate::baselines::{oracle_ls, ra_omp_recover, somp_recover, AlgorithmId};
use crate::linalg::DenseMatrix;
use crate::recovery::{
    ssmp_recover, ObservationMatrix, RecoveryError, RecoveryResult, SamplingMatrix, SsmpConfig,
    StopReason,
};
use crate::rng::derive_seed;

mod generate;

pub use generate::{
    generate_noise, generate_sampling_matrix, generate_signal, GeneratedSignal, SignalModel,
    SignalSpec,
};

/// Relative Frobenius error below which a reconstruction counts as exact.
pub const EXACT_RECOVERY_TOLERANCE: f64 = 1e-6;

const STREAM_MATRIX: u64 = 1;
const STREAM_SIGNAL: u64 = 2;
const STREAM_NOISE: u64 = 3;

#[derive(Debug)]
pub enum ExperimentError {
    InvalidConfig(String),
    Recovery(RecoveryError),
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::InvalidConfig(msg) => f.write_str(msg),
            ExperimentError::Recovery(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for ExperimentError {}

impl From<RecoveryError> for ExperimentError {
    fn from(e: RecoveryError) -> Self {
        ExperimentError::Recovery(e)
    }
}

/// Aggregated metric of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Exact reconstruction ratio.
    Err,
    /// Exact support recovery ratio.
    Esrr,
    /// Mean squared error `‖X - X̂‖²_F / (n r)`.
    Mse,
}

impl Metric {
    pub fn tag(&self) -> &'static str {
        match self {
            Metric::Err => "err",
            Metric::Esrr => "esrr",
            Metric::Mse => "mse",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "err" => Ok(Metric::Err),
            "esrr" => Ok(Metric::Esrr),
            "mse" => Ok(Metric::Mse),
            other => Err(format!("unknown metric '{other}' (expected err, esrr, or mse)")),
        }
    }
}

/// Swept axis and its grid points.
#[derive(Debug, Clone, PartialEq)]
pub enum GridAxis {
    Sparsity(Vec<usize>),
    Measurements(Vec<usize>),
    SnrDb(Vec<f64>),
}

impl GridAxis {
    fn len(&self) -> usize {
        match self {
            GridAxis::Sparsity(v) => v.len(),
            GridAxis::Measurements(v) => v.len(),
            GridAxis::SnrDb(v) => v.len(),
        }
    }
}

/// Number of measurement vectors: fixed, or tied to the swept sparsity
/// (the full-row-rank protocol `r = K`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankSpec {
    Fixed(usize),
    EqualSparsity,
}

/// How the pursuit stopping threshold is chosen per trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsilonMode {
    /// Always zero (noiseless convention).
    Zero,
    /// `‖W‖_F / σ_max(Y)` from the known per-trial noise power.
    Calibrated,
}

/// Full sweep description. Construct directly or parse from JSON with
/// [`ExperimentConfig::from_json`].
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub measurements: usize,
    pub dimension: usize,
    pub rank: RankSpec,
    /// Fixed sparsity, required when the grid axis is not sparsity.
    pub sparsity: Option<usize>,
    pub grid: GridAxis,
    pub algorithms: Vec<AlgorithmId>,
    pub trials: usize,
    pub seed: u64,
    pub metric: Metric,
    pub signal_model: SignalModel,
    pub epsilon_mode: EpsilonMode,
    /// Reuse one sampling matrix per grid point instead of redrawing each
    /// trial.
    pub fixed_matrix: bool,
}

/// JSON schema of a sweep configuration file. The metric comes from the CLI
/// flag, not the file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    m: usize,
    n: usize,
    r: RawRank,
    #[serde(rename = "K_grid", default)]
    k_grid: Option<Vec<usize>>,
    #[serde(rename = "m_grid", default)]
    m_grid: Option<Vec<usize>>,
    #[serde(rename = "snr_grid", default)]
    snr_grid: Option<Vec<f64>>,
    #[serde(rename = "K", default)]
    k: Option<usize>,
    algorithms: Vec<String>,
    trials: usize,
    seed: u64,
    #[serde(rename = "L_variants", default)]
    l_variants: Option<Vec<usize>>,
    signal_model: String,
    #[serde(default)]
    rho: Option<f64>,
    epsilon_mode: String,
    #[serde(default)]
    fixed_matrix: bool,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawRank {
    Fixed(usize),
    Tag(String),
}

impl ExperimentConfig {
    /// Parse a config file; `metric` comes from the caller (CLI flag).
    pub fn from_json(text: &str, metric: Metric) -> Result<Self, ExperimentError> {
        let raw: ConfigFile = serde_json::from_str(text)
            .map_err(|e| ExperimentError::InvalidConfig(format!("config parse error: {e}")))?;
        let grid = match (&raw.k_grid, &raw.m_grid, &raw.snr_grid) {
            (Some(k), None, None) => GridAxis::Sparsity(k.clone()),
            (None, Some(m), None) => GridAxis::Measurements(m.clone()),
            (None, None, Some(s)) => GridAxis::SnrDb(s.clone()),
            _ => {
                return Err(ExperimentError::InvalidConfig(
                    "exactly one of K_grid, m_grid, snr_grid must be present".into(),
                ))
            }
        };
        let rank = match raw.r {
            RawRank::Fixed(v) => RankSpec::Fixed(v),
            RawRank::Tag(ref t) if t == "K" => RankSpec::EqualSparsity,
            RawRank::Tag(t) => {
                return Err(ExperimentError::InvalidConfig(format!(
                    "r must be a count or the string \"K\", got \"{t}\""
                )))
            }
        };
        let signal_model = match raw.signal_model.as_str() {
            "gaussian" => SignalModel::Gaussian,
            "two-pam" => SignalModel::TwoPam,
            "approx-sparse" => {
                let rho = raw.rho.ok_or_else(|| {
                    ExperimentError::InvalidConfig("approx-sparse requires rho".into())
                })?;
                SignalModel::ApproxSparse { rho }
            }
            other => {
                return Err(ExperimentError::InvalidConfig(format!(
                    "unknown signal_model '{other}' (expected gaussian, two-pam, approx-sparse)"
                )))
            }
        };
        if raw.rho.is_some() && !matches!(signal_model, SignalModel::ApproxSparse { .. }) {
            return Err(ExperimentError::InvalidConfig(
                "rho is only meaningful for the approx-sparse signal model".into(),
            ));
        }
        let epsilon_mode = match raw.epsilon_mode.as_str() {
            "zero" => EpsilonMode::Zero,
            "calibrated" => EpsilonMode::Calibrated,
            other => {
                return Err(ExperimentError::InvalidConfig(format!(
                    "unknown epsilon_mode '{other}' (expected zero or calibrated)"
                )))
            }
        };
        let mut algorithms = Vec::new();
        for name in &raw.algorithms {
            let id = AlgorithmId::from_str(name).map_err(ExperimentError::InvalidConfig)?;
            if !algorithms.contains(&id) {
                algorithms.push(id);
            }
        }
        for l in raw.l_variants.unwrap_or_default() {
            let id = match l {
                1 => AlgorithmId::RaOrmp,
                2 => AlgorithmId::SsmpL2,
                3 => AlgorithmId::SsmpL3,
                other => {
                    return Err(ExperimentError::InvalidConfig(format!(
                        "no tagged variant for L = {other}; available L values are 1, 2, 3"
                    )))
                }
            };
            if !algorithms.contains(&id) {
                algorithms.push(id);
            }
        }
        let cfg = ExperimentConfig {
            measurements: raw.m,
            dimension: raw.n,
            rank,
            sparsity: raw.k,
            grid,
            algorithms,
            trials: raw.trials,
            seed: raw.seed,
            metric,
            signal_model,
            epsilon_mode,
            fixed_matrix: raw.fixed_matrix,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.trials == 0 {
            return Err(ExperimentError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.grid.len() == 0 {
            return Err(ExperimentError::InvalidConfig("grid must be nonempty".into()));
        }
        if self.algorithms.is_empty() {
            return Err(ExperimentError::InvalidConfig("algorithms must be nonempty".into()));
        }
        match self.grid {
            GridAxis::Sparsity(_) => {
                if self.sparsity.is_some() {
                    return Err(ExperimentError::InvalidConfig(
                        "K conflicts with K_grid; drop one".into(),
                    ));
                }
            }
            GridAxis::Measurements(_) | GridAxis::SnrDb(_) => {
                if self.sparsity.is_none() {
                    return Err(ExperimentError::InvalidConfig(
                        "a fixed K is required for m or SNR sweeps".into(),
                    ));
                }
            }
        }
        // Dry-resolve every grid point to surface dimension errors up front.
        for idx in 0..self.grid.len() {
            let dims = self.resolve(idx);
            if dims.sparsity == 0 || dims.sparsity > self.dimension {
                return Err(ExperimentError::InvalidConfig(format!(
                    "grid point {idx}: sparsity {} out of range for n = {}",
                    dims.sparsity, self.dimension
                )));
            }
            if dims.measurements == 0 {
                return Err(ExperimentError::InvalidConfig(format!(
                    "grid point {idx}: zero measurements"
                )));
            }
            if dims.rank == 0 {
                return Err(ExperimentError::InvalidConfig(format!(
                    "grid point {idx}: zero measurement vectors"
                )));
            }
        }
        Ok(())
    }

    /// Concrete dimensions at one grid point.
    fn resolve(&self, grid_idx: usize) -> ResolvedPoint {
        let (measurements, sparsity, snr_db, grid_value) = match &self.grid {
            GridAxis::Sparsity(ks) => {
                let k = ks[grid_idx];
                (self.measurements, k, None, k as f64)
            }
            GridAxis::Measurements(ms) => {
                let m = ms[grid_idx];
                (m, self.sparsity.expect("validated"), None, m as f64)
            }
            GridAxis::SnrDb(snrs) => {
                let snr = snrs[grid_idx];
                (self.measurements, self.sparsity.expect("validated"), Some(snr), snr)
            }
        };
        let rank = match self.rank {
            RankSpec::Fixed(r) => r,
            RankSpec::EqualSparsity => sparsity,
        };
        ResolvedPoint { measurements, sparsity, rank, snr_db, grid_value }
    }

    pub fn grid_values(&self) -> Vec<f64> {
        (0..self.grid.len()).map(|i| self.resolve(i).grid_value).collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct ResolvedPoint {
    measurements: usize,
    sparsity: usize,
    rank: usize,
    snr_db: Option<f64>,
    grid_value: f64,
}

/// Fully materialized instance of one trial, reproducible from the seeds.
pub struct TrialInstance {
    pub matrix: SamplingMatrix,
    pub signal: GeneratedSignal,
    pub noise: Option<DenseMatrix>,
    pub observations: ObservationMatrix,
    pub epsilon: f64,
    pub sparsity: usize,
    pub grid_value: f64,
    pub trial_seed: u64,
}

/// Build the exact instance that `run_sweep` uses for `(grid_idx, trial_idx)`.
pub fn build_trial(
    cfg: &ExperimentConfig,
    grid_idx: usize,
    trial_idx: usize,
) -> Result<TrialInstance, ExperimentError> {
    let point = cfg.resolve(grid_idx);
    let matrix_trial_coord = if cfg.fixed_matrix { 0 } else { trial_idx as u64 };
    let matrix_seed = derive_seed(cfg.seed, grid_idx as u64, matrix_trial_coord, STREAM_MATRIX);
    let signal_seed = derive_seed(cfg.seed, grid_idx as u64, trial_idx as u64, STREAM_SIGNAL);
    let noise_seed = derive_seed(cfg.seed, grid_idx as u64, trial_idx as u64, STREAM_NOISE);

    let matrix = generate_sampling_matrix(point.measurements, cfg.dimension, matrix_seed)?;
    let spec = SignalSpec {
        dimension: cfg.dimension,
        vector_count: point.rank,
        sparsity: point.sparsity,
        model: cfg.signal_model,
    };
    let signal = generate_signal(&spec, signal_seed)?;

    let clean = matrix.matrix().matmul(&signal.dense);
    let (noise, observations) = match point.snr_db {
        Some(snr) => {
            let w = generate_noise(point.measurements, point.rank, point.sparsity, snr, noise_seed)?;
            let y = ObservationMatrix::with_noise_power(clean.add(&w), w.frobenius_norm())?;
            (Some(w), y)
        }
        None => (None, ObservationMatrix::new(clean)?),
    };
    let epsilon = match cfg.epsilon_mode {
        EpsilonMode::Zero => 0.0,
        EpsilonMode::Calibrated => observations.calibrated_epsilon().unwrap_or(0.0),
    };
    Ok(TrialInstance {
        matrix,
        signal,
        noise,
        observations,
        epsilon,
        sparsity: point.sparsity,
        grid_value: point.grid_value,
        trial_seed: signal_seed,
    })
}

/// Outcome of one algorithm on one trial.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub grid_point: f64,
    pub algorithm: AlgorithmId,
    /// Exact reconstruction (ERR/MSE sweeps) or exact support (ESRR sweeps).
    pub success: bool,
    /// `‖X - X̂‖²_F` against the dense planted signal.
    pub squared_error: f64,
    pub iterations: usize,
    pub trial_seed: u64,
    /// Tag of the recovery error when the algorithm failed to run.
    pub error_tag: Option<&'static str>,
}

/// One aggregated row: metric value for a (grid point, algorithm) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub grid: f64,
    pub algorithm: AlgorithmId,
    pub metric: Metric,
    pub value: f64,
    pub trials: usize,
    pub seed: u64,
}

/// Aggregated sweep output, ordered by (grid, algorithm tag).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<TableRow>,
}

/// Run one algorithm on a prepared trial instance.
pub fn run_algorithm(
    instance: &TrialInstance,
    algorithm: AlgorithmId,
) -> Result<RecoveryResult, RecoveryError> {
    let k = instance.sparsity;
    let ssmp_cfg = |l: usize| SsmpConfig::new(k, l.min(k)).with_epsilon(instance.epsilon);
    match algorithm {
        AlgorithmId::SsmpL2 => ssmp_recover(&instance.matrix, &instance.observations, &ssmp_cfg(2)),
        AlgorithmId::SsmpL3 => ssmp_recover(&instance.matrix, &instance.observations, &ssmp_cfg(3)),
        AlgorithmId::RaOrmp => ssmp_recover(&instance.matrix, &instance.observations, &ssmp_cfg(1)),
        AlgorithmId::RaOmp => ra_omp_recover(&instance.matrix, &instance.observations, k),
        AlgorithmId::Somp => somp_recover(&instance.matrix, &instance.observations, k),
        AlgorithmId::OracleLs => {
            let estimate =
                oracle_ls(&instance.matrix, &instance.observations, instance.signal.support())?;
            Ok(RecoveryResult {
                support: instance.signal.support().clone(),
                estimate,
                iterations_run: 0,
                trace: Vec::new(),
                stop_reason: StopReason::EpsilonMet,
            })
        }
    }
}

fn score_trial(
    instance: &TrialInstance,
    algorithm: AlgorithmId,
    metric: Metric,
) -> TrialRecord {
    let truth = &instance.signal.dense;
    match run_algorithm(instance, algorithm) {
        Ok(result) => {
            let squared_error = result.estimate.sub(truth).frobenius_norm().powi(2);
            let support_match = result.support == *instance.signal.support();
            let exact = support_match
                && squared_error.sqrt() <= EXACT_RECOVERY_TOLERANCE * truth.frobenius_norm();
            let success = match metric {
                Metric::Esrr => support_match,
                Metric::Err | Metric::Mse => exact,
            };
            TrialRecord {
                grid_point: instance.grid_value,
                algorithm,
                success,
                squared_error,
                iterations: result.iterations_run,
                trial_seed: instance.trial_seed,
                error_tag: None,
            }
        }
        Err(err) => TrialRecord {
            grid_point: instance.grid_value,
            algorithm,
            success: false,
            squared_error: truth.frobenius_norm().powi(2),
            iterations: 0,
            trial_seed: instance.trial_seed,
            error_tag: Some(err.tag()),
        },
    }
}

/// Execute the sweep. Trials run in parallel on the current rayon pool;
/// per-trial seeding and order-independent aggregation make the output
/// identical for any worker count.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<(Vec<TrialRecord>, SweepTable), ExperimentError> {
    cfg.validate()?;
    let coords: Vec<(usize, usize)> = (0..cfg.grid.len())
        .flat_map(|g| (0..cfg.trials).map(move |t| (g, t)))
        .collect();
    let per_trial: Vec<Result<Vec<TrialRecord>, ExperimentError>> = coords
        .par_iter()
        .map(|&(grid_idx, trial_idx)| {
            let instance = build_trial(cfg, grid_idx, trial_idx)?;
            Ok(cfg
                .algorithms
                .iter()
                .map(|&alg| score_trial(&instance, alg, cfg.metric))
                .collect())
        })
        .collect();

    let mut records = Vec::with_capacity(coords.len() * cfg.algorithms.len());
    for r in per_trial {
        records.extend(r?);
    }

    let nr_scale = |point: &ResolvedPoint| (cfg.dimension * point.rank) as f64;
    let mut rows = Vec::new();
    for grid_idx in 0..cfg.grid.len() {
        let point = cfg.resolve(grid_idx);
        let mut algorithms = cfg.algorithms.clone();
        algorithms.sort_by_key(|a| a.tag());
        for alg in algorithms {
            let cell: Vec<&TrialRecord> = records
                .iter()
                .filter(|rec| rec.grid_point == point.grid_value && rec.algorithm == alg)
                .collect();
            let value = match cfg.metric {
                Metric::Err | Metric::Esrr => {
                    cell.iter().filter(|rec| rec.success).count() as f64 / cell.len() as f64
                }
                Metric::Mse => {
                    cell.iter().map(|rec| rec.squared_error).sum::<f64>()
                        / (cell.len() as f64 * nr_scale(&point))
                }
            };
            rows.push(TableRow {
                grid: point.grid_value,
                algorithm: alg,
                metric: cfg.metric,
                value,
                trials: cfg.trials,
                seed: cfg.seed,
            });
        }
    }
    rows.sort_by(|a, b| {
        a.grid.partial_cmp(&b.grid).expect("grid values are finite").then(a.algorithm.tag().cmp(b.algorithm.tag()))
    });
    Ok((records, SweepTable { rows }))
}

/// Format with six significant decimal digits, plain notation for moderate
/// magnitudes and scientific otherwise.
pub fn format_significant(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..=14).contains(&exp) {
        return format!("{v:.5e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Serialize a sweep table as CSV: header
/// `grid,algorithm,metric,value,trials,seed`, rows sorted by
/// (grid, algorithm), values at six significant digits. Byte-deterministic
/// for a fixed table.
pub fn emit_csv(table: &SweepTable) -> String {
    let mut out = String::from("grid,algorithm,metric,value,trials,seed\n");
    for row in &table.rows {
        let grid = if row.grid.fract() == 0.0 && row.grid.abs() < 1e15 {
            format!("{}", row.grid as i64)
        } else {
            format_significant(row.grid)
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            grid,
            row.algorithm.tag(),
            row.metric.tag(),
            format_significant(row.value),
            row.trials,
            row.seed
        ));
    }
    out
}

/// Parse CSV produced by [`emit_csv`] back into a table.
pub fn parse_results_csv(text: &str) -> Result<SweepTable, ExperimentError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| ExperimentError::InvalidConfig("empty results CSV".into()))?;
    if header != "grid,algorithm,metric,value,trials,seed" {
        return Err(ExperimentError::InvalidConfig(format!("unexpected header '{header}'")));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(ExperimentError::InvalidConfig(format!(
                "line {}: expected 6 fields, found {}",
                lineno + 2,
                fields.len()
            )));
        }
        let parse_f64 = |s: &str, what: &str| -> Result<f64, ExperimentError> {
            s.parse().map_err(|_| {
                ExperimentError::InvalidConfig(format!("line {}: bad {what} '{s}'", lineno + 2))
            })
        };
        rows.push(TableRow {
            grid: parse_f64(fields[0], "grid")?,
            algorithm: AlgorithmId::from_str(fields[1]).map_err(ExperimentError::InvalidConfig)?,
            metric: Metric::from_str(fields[2]).map_err(ExperimentError::InvalidConfig)?,
            value: parse_f64(fields[3], "value")?,
            trials: fields[4].parse().map_err(|_| {
                ExperimentError::InvalidConfig(format!("line {}: bad trials", lineno + 2))
            })?,
            seed: fields[5].parse().map_err(|_| {
                ExperimentError::InvalidConfig(format!("line {}: bad seed", lineno + 2))
            })?,
        });
    }
    Ok(SweepTable { rows })
}
