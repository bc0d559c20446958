//! Instance generators for Monte Carlo trials.
//!
//! All generators are deterministic functions of their seed. Gaussian
//! variates come from the crate's fixed SplitMix64 + Box-Muller stream (see
//! [`crate::rng`]), so a (seed, dimensions) pair pins the instance bytes
//! forever.

use crate::linalg::DenseMatrix;
use crate::recovery::{RecoveryError, RowSparseSignal, SamplingMatrix, SupportSet};
use crate::rng::SplitMix64;

use super::ExperimentError;

/// Nonzero-entry distribution of the planted signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignalModel {
    /// Standard normal nonzero entries.
    Gaussian,
    /// Uniform ±1 nonzero entries (2-ary pulse amplitude modulation).
    TwoPam,
    /// Standard normal on the support plus a small dense tail off it,
    /// scaled so `E‖X - X_K‖²_F / E‖X‖²_F = rho²`.
    ApproxSparse { rho: f64 },
}

/// Dimensions and distribution of one planted signal.
#[derive(Debug, Clone, Copy)]
pub struct SignalSpec {
    pub dimension: usize,
    pub vector_count: usize,
    pub sparsity: usize,
    pub model: SignalModel,
}

impl SignalSpec {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.sparsity == 0 || self.sparsity > self.dimension {
            return Err(ExperimentError::InvalidConfig(format!(
                "sparsity must lie in 1..=n, got K = {}, n = {}",
                self.sparsity, self.dimension
            )));
        }
        if self.vector_count == 0 {
            return Err(ExperimentError::InvalidConfig("need at least one measurement vector".into()));
        }
        if let SignalModel::ApproxSparse { rho } = self.model {
            if !(rho > 0.0 && rho < 1.0) {
                return Err(ExperimentError::InvalidConfig(format!(
                    "approx-sparse rho must lie in (0, 1), got {rho}"
                )));
            }
            if self.sparsity == self.dimension {
                return Err(ExperimentError::InvalidConfig(
                    "approx-sparse needs K < n for the off-support tail".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Planted signal: the row-sparse part plus its dense form (identical for
/// exactly sparse models, carrying the tail for the approximately sparse
/// one).
#[derive(Debug, Clone)]
pub struct GeneratedSignal {
    pub sparse: RowSparseSignal,
    pub dense: DenseMatrix,
}

impl GeneratedSignal {
    pub fn support(&self) -> &SupportSet {
        self.sparse.support()
    }
}

/// Sampling matrix with i.i.d. `N(0, 1/m)` entries.
pub fn generate_sampling_matrix(
    measurements: usize,
    dimension: usize,
    seed: u64,
) -> Result<SamplingMatrix, RecoveryError> {
    let mut rng = SplitMix64::new(seed);
    let scale = 1.0 / (measurements as f64).sqrt();
    let matrix =
        DenseMatrix::from_fn(measurements, dimension, |_, _| rng.next_gaussian() * scale);
    SamplingMatrix::new(matrix)
}

/// Planted row-sparse signal with support uniform over the K-subsets of
/// `0..n`.
pub fn generate_signal(spec: &SignalSpec, seed: u64) -> Result<GeneratedSignal, ExperimentError> {
    spec.validate()?;
    let mut rng = SplitMix64::new(seed);
    let n = spec.dimension;
    let k = spec.sparsity;
    let r = spec.vector_count;

    // Partial Fisher-Yates over 0..n; the first K slots are the support.
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + rng.next_below((n - i) as u64) as usize;
        pool.swap(i, j);
    }
    let support = SupportSet::from_unsorted(pool[..k].to_vec())
        .expect("fisher-yates prefix has no duplicates");

    let coefficients = match spec.model {
        SignalModel::Gaussian | SignalModel::ApproxSparse { .. } => {
            DenseMatrix::from_fn(k, r, |_, _| rng.next_gaussian())
        }
        SignalModel::TwoPam => DenseMatrix::from_fn(k, r, |_, _| rng.next_sign()),
    };
    let sparse = RowSparseSignal::new(support, coefficients)
        .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
    let mut dense = sparse.to_dense(n);

    if let SignalModel::ApproxSparse { rho } = spec.model {
        // Off-support variance making the expected relative tail energy rho².
        let sigma_sq = rho * rho * k as f64 / ((n - k) as f64 * (1.0 - rho * rho));
        let sigma = sigma_sq.sqrt();
        for row in 0..n {
            if sparse.support().contains(row) {
                continue;
            }
            for col in 0..r {
                dense.set(row, col, sigma * rng.next_gaussian());
            }
        }
    }

    Ok(GeneratedSignal { sparse, dense })
}

/// Noise matrix with i.i.d. `N(0, (K/m) 10^(-SNR/10))` entries, calibrated so
/// the stated SNR holds in expectation against a unit-variance signal model.
pub fn generate_noise(
    measurements: usize,
    vector_count: usize,
    sparsity: usize,
    snr_db: f64,
    seed: u64,
) -> Result<DenseMatrix, ExperimentError> {
    if !snr_db.is_finite() {
        return Err(ExperimentError::InvalidConfig("SNR must be finite".into()));
    }
    let variance = sparsity as f64 / measurements as f64 * 10f64.powf(-snr_db / 10.0);
    let sigma = variance.sqrt();
    let mut rng = SplitMix64::new(seed);
    Ok(DenseMatrix::from_fn(measurements, vector_count, |_, _| sigma * rng.next_gaussian()))
}
