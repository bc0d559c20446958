//! Greedy joint sparse recovery by signal space matching pursuit (SSMP).
//!
//! Given observations `Y = A X (+ W)` of a row-sparse signal `X`, the pursuit
//! loop grows a support estimate, a few indices per iteration, by choosing the
//! columns whose normalized projections carry the most energy inside the
//! current residual space. That selection is equivalent to picking the
//! columns minimizing the subspace distance between the residual space and
//! its projection onto the enlarged support, but needs only two projection
//! operators per iteration.
//!
//! Special cases exposed by name: with one index per iteration the pursuit is
//! rank-aware order recursive matching pursuit (RA-ORMP); with a single
//! measurement vector it coincides with multiple orthogonal least squares,
//! and with both it is classical OLS.

use std::fmt;

use crate::linalg::{
    orthonormal_basis, project_complement, residual_subspace_distance, singular_values,
    DenseMatrix, LinalgError, OrthonormalBasis, RankTolerance,
};

/// Floating-point floor applied to the stopping guard. A threshold of zero
/// means exact containment of the measurement space, which in finite
/// precision manifests as a subspace gap on the order of machine epsilon
/// times the conditioning; gaps below this floor are treated as zero.
pub const STOP_GUARD_FLOOR: f64 = 1e-10;

/// Identification scores closer than this count as tied and defer to the
/// smallest-index rule. Candidates that coincide mathematically (for
/// example, several support columns whose projected energy saturates at one)
/// land within a few ulp of each other, so which one carries the largest
/// floating-point value is rounding noise; genuine score gaps in random
/// instances are many orders of magnitude wider than this tolerance.
pub const SELECTION_TIE_TOLERANCE: f64 = 1e-9;

/// Order candidate indices by score descending, clustering values closer
/// than [`SELECTION_TIE_TOLERANCE`] into tie groups resolved by ascending
/// index. `entries` holds (index, score) pairs. Exposed so equivalence
/// oracles can rank alternative metrics under the exact tie semantics the
/// identification step uses.
pub fn rank_candidates(mut entries: Vec<(usize, f64)>) -> Vec<usize> {
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("scores are finite").then(a.0.cmp(&b.0)));
    let mut ordered = Vec::with_capacity(entries.len());
    let mut group: Vec<usize> = Vec::new();
    let mut group_score = f64::INFINITY;
    for (idx, score) in entries {
        if group_score - score > SELECTION_TIE_TOLERANCE {
            group.sort_unstable();
            ordered.append(&mut group);
        }
        group_score = score;
        group.push(idx);
    }
    group.sort_unstable();
    ordered.append(&mut group);
    ordered
}

/// Measurement operator `A` with cached column norms.
#[derive(Debug, Clone)]
pub struct SamplingMatrix {
    matrix: DenseMatrix,
    column_norms: Vec<f64>,
}

impl SamplingMatrix {
    pub fn new(matrix: DenseMatrix) -> Result<Self, RecoveryError> {
        if matrix.cols() == 0 {
            return Err(RecoveryError::InvalidInput("sampling matrix needs at least one column".into()));
        }
        if !matrix.is_finite() {
            return Err(RecoveryError::InvalidInput("sampling matrix has non-finite entries".into()));
        }
        let column_norms = (0..matrix.cols()).map(|j| matrix.column_norm(j)).collect();
        Ok(SamplingMatrix { matrix, column_norms })
    }

    /// Number of measurements (rows).
    pub fn measurements(&self) -> usize {
        self.matrix.rows()
    }

    /// Signal dimension (columns).
    pub fn dimension(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn column_norms(&self) -> &[f64] {
        &self.column_norms
    }

    /// Submatrix with the columns listed in `support`.
    pub fn columns(&self, support: &SupportSet) -> DenseMatrix {
        self.matrix.select_columns(support.indices())
    }
}

/// Observations `Y`, optionally tagged with the known noise power `‖W‖_F`
/// so a stopping threshold can be calibrated.
#[derive(Debug, Clone)]
pub struct ObservationMatrix {
    matrix: DenseMatrix,
    noise_frobenius: Option<f64>,
}

impl ObservationMatrix {
    pub fn new(matrix: DenseMatrix) -> Result<Self, RecoveryError> {
        Self::build(matrix, None)
    }

    pub fn with_noise_power(matrix: DenseMatrix, noise_frobenius: f64) -> Result<Self, RecoveryError> {
        if !(noise_frobenius.is_finite() && noise_frobenius >= 0.0) {
            return Err(RecoveryError::InvalidInput("noise power must be finite and nonnegative".into()));
        }
        Self::build(matrix, Some(noise_frobenius))
    }

    fn build(matrix: DenseMatrix, noise_frobenius: Option<f64>) -> Result<Self, RecoveryError> {
        if matrix.cols() == 0 {
            return Err(RecoveryError::InvalidInput("observation matrix needs at least one column".into()));
        }
        if !matrix.is_finite() {
            return Err(RecoveryError::InvalidInput("observation matrix has non-finite entries".into()));
        }
        Ok(ObservationMatrix { matrix, noise_frobenius })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    /// Number of measurement vectors (columns of `Y`).
    pub fn vector_count(&self) -> usize {
        self.matrix.cols()
    }

    pub fn noise_frobenius(&self) -> Option<f64> {
        self.noise_frobenius
    }

    /// `‖W‖_F / σ_max(Y)`, the stopping threshold recommended for noisy
    /// observations; `None` when the noise power is unknown or `Y = 0`.
    pub fn calibrated_epsilon(&self) -> Option<f64> {
        let w = self.noise_frobenius?;
        let sigma_max = singular_values(&self.matrix).ok()?.first().copied()?;
        if sigma_max > 0.0 {
            Some(w / sigma_max)
        } else {
            None
        }
    }
}

/// Strictly increasing set of column indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    indices: Vec<usize>,
}

impl SupportSet {
    pub fn empty() -> Self {
        SupportSet { indices: Vec::new() }
    }

    /// Build from a strictly increasing index list.
    pub fn new(indices: Vec<usize>) -> Result<Self, RecoveryError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(RecoveryError::InvalidInput(
                "support indices must be strictly increasing".into(),
            ));
        }
        Ok(SupportSet { indices })
    }

    /// Build from an arbitrary index list; duplicates are rejected.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Result<Self, RecoveryError> {
        indices.sort_unstable();
        Self::new(indices)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// Union with a disjoint set of new indices.
    pub fn union(&self, new_indices: &[usize]) -> Result<SupportSet, RecoveryError> {
        let mut all = self.indices.clone();
        all.extend_from_slice(new_indices);
        SupportSet::from_unsorted(all)
    }
}

/// Row-sparse signal stored as its support plus the dense `K x r` block of
/// coefficient rows.
#[derive(Debug, Clone)]
pub struct RowSparseSignal {
    support: SupportSet,
    coefficients: DenseMatrix,
}

impl RowSparseSignal {
    pub fn new(support: SupportSet, coefficients: DenseMatrix) -> Result<Self, RecoveryError> {
        if coefficients.rows() != support.len() || support.is_empty() {
            return Err(RecoveryError::InvalidInput(format!(
                "coefficient block has {} rows for a support of size {}",
                coefficients.rows(),
                support.len()
            )));
        }
        if !coefficients.is_finite() {
            return Err(RecoveryError::InvalidInput("coefficients must be finite".into()));
        }
        Ok(RowSparseSignal { support, coefficients })
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    /// Number of measurement vectors `r` (columns).
    pub fn vector_count(&self) -> usize {
        self.coefficients.cols()
    }

    pub fn coefficients(&self) -> &DenseMatrix {
        &self.coefficients
    }

    /// Scatter into a dense `n x r` matrix with zero rows off the support.
    pub fn to_dense(&self, dimension: usize) -> DenseMatrix {
        let r = self.coefficients.cols();
        let mut out = DenseMatrix::zeros(dimension, r);
        for (block_row, &row) in self.support.indices().iter().enumerate() {
            for j in 0..r {
                out.set(row, j, self.coefficients.get(block_row, j));
            }
        }
        out
    }
}

/// Pursuit parameters: target sparsity `K`, indices added per iteration `L`,
/// and the stopping threshold on the subspace gap.
#[derive(Debug, Clone)]
pub struct SsmpConfig {
    /// Target sparsity `K`.
    pub sparsity: usize,
    /// Indices selected per iteration `L`, `1 <= L <= K`.
    pub indices_per_iteration: usize,
    /// Stopping threshold on `dist(R(Y), P_S R(Y))`. Zero requests exact
    /// containment; see [`STOP_GUARD_FLOOR`].
    pub epsilon: f64,
    /// Replaces the default iteration cap `min(K, floor(m / L))` when set.
    pub max_iterations_override: Option<usize>,
}

impl SsmpConfig {
    pub fn new(sparsity: usize, indices_per_iteration: usize) -> Self {
        SsmpConfig {
            sparsity,
            indices_per_iteration,
            epsilon: 0.0,
            max_iterations_override: None,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    fn validate(&self, measurements: usize) -> Result<(), RecoveryError> {
        if self.sparsity == 0 {
            return Err(RecoveryError::InvalidConfig("sparsity must be at least 1".into()));
        }
        if self.indices_per_iteration == 0 || self.indices_per_iteration > self.sparsity {
            return Err(RecoveryError::InvalidConfig(format!(
                "indices per iteration must satisfy 1 <= L <= K, got L={} K={}",
                self.indices_per_iteration, self.sparsity
            )));
        }
        if self.indices_per_iteration > measurements {
            return Err(RecoveryError::InvalidConfig(format!(
                "cannot select {} indices per iteration with {} measurements",
                self.indices_per_iteration, measurements
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(RecoveryError::InvalidConfig("epsilon must be finite and nonnegative".into()));
        }
        if let Some(total) = self.max_iterations_override {
            if total * self.indices_per_iteration > measurements {
                return Err(RecoveryError::OverdeterminedSupport {
                    support_size: total * self.indices_per_iteration,
                    measurements,
                });
            }
        }
        Ok(())
    }

    fn iteration_cap(&self, measurements: usize) -> usize {
        self.max_iterations_override
            .unwrap_or_else(|| self.sparsity.min(measurements / self.indices_per_iteration))
    }
}

/// Why the pursuit loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The subspace gap fell to the stopping threshold.
    EpsilonMet,
    /// The iteration cap was reached.
    IterationCapReached,
    /// `Y` was exactly zero; the empty support is already consistent.
    ExactZeroObservation,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            StopReason::EpsilonMet => "epsilon-met",
            StopReason::IterationCapReached => "k-max",
            StopReason::ExactZeroObservation => "exact-zero-observation",
        };
        f.write_str(tag)
    }
}

/// Per-iteration record: selected indices, residual norm after the LS
/// re-estimate, and the stopping-guard subspace gap after the update.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub selected: Vec<usize>,
    pub residual_norm: f64,
    pub subspace_gap: f64,
}

/// Output of a pursuit run.
#[derive(Debug, Clone)]
pub struct RecoveryResult {
    /// Estimated support, at most `K` indices.
    pub support: SupportSet,
    /// Row-sparse estimate, `n x r`; rows outside `support` are exactly zero.
    pub estimate: DenseMatrix,
    pub iterations_run: usize,
    pub trace: Vec<IterationRecord>,
    pub stop_reason: StopReason,
}

/// Support and trace recovered before an error interrupted the loop.
#[derive(Debug, Clone)]
pub struct PartialRecovery {
    pub support: SupportSet,
    pub iterations_run: usize,
    pub trace: Vec<IterationRecord>,
}

#[derive(Debug)]
pub enum RecoveryError {
    InvalidInput(String),
    InvalidConfig(String),
    /// Operand dimensions do not line up.
    DimensionMismatch { matrix_rows: usize, observation_rows: usize },
    /// Requested support larger than the number of measurements.
    OverdeterminedSupport { support_size: usize, measurements: usize },
    /// Fewer admissible candidate columns than indices to select.
    SelectionExhausted {
        requested: usize,
        available: usize,
        partial: Option<Box<PartialRecovery>>,
    },
    Linalg(LinalgError),
}

impl fmt::Display for RecoveryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecoveryError::InvalidInput(msg) | RecoveryError::InvalidConfig(msg) => {
                f.write_str(msg)
            }
            RecoveryError::DimensionMismatch { matrix_rows, observation_rows } => write!(
                f,
                "sampling matrix has {matrix_rows} rows but observations have {observation_rows}"
            ),
            RecoveryError::OverdeterminedSupport { support_size, measurements } => write!(
                f,
                "support of size {support_size} exceeds {measurements} measurements"
            ),
            RecoveryError::SelectionExhausted { requested, available, .. } => write!(
                f,
                "selection exhausted: {requested} indices requested, {available} candidates available"
            ),
            RecoveryError::Linalg(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for RecoveryError {}

impl From<LinalgError> for RecoveryError {
    fn from(e: LinalgError) -> Self {
        RecoveryError::Linalg(e)
    }
}

impl RecoveryError {
    /// Short machine-readable tag, used in benchmark trial records.
    pub fn tag(&self) -> &'static str {
        match self {
            RecoveryError::InvalidInput(_) => "invalid-input",
            RecoveryError::InvalidConfig(_) => "invalid-config",
            RecoveryError::DimensionMismatch { .. } => "dimension-mismatch",
            RecoveryError::OverdeterminedSupport { .. } => "overdetermined-support",
            RecoveryError::SelectionExhausted { .. } => "selection-exhausted",
            RecoveryError::Linalg(_) => "linalg",
        }
    }
}

/// The l2-normalized counterpart `B` of `P⊥_S A`: column `i` is
/// `P⊥_S a_i / ‖P⊥_S a_i‖` for `i` outside the support and zero on it.
/// Columns whose projected norm falls below the rank threshold carry no new
/// direction and are zeroed as well, making them unselectable.
pub fn normalized_projected_dictionary(
    a: &SamplingMatrix,
    support: &SupportSet,
    tol: RankTolerance,
) -> Result<DenseMatrix, RecoveryError> {
    let basis = support_basis(a, support, tol)?;
    Ok(projected_dictionary_with_basis(a, support, &basis, tol))
}

fn support_basis(
    a: &SamplingMatrix,
    support: &SupportSet,
    tol: RankTolerance,
) -> Result<OrthonormalBasis, RecoveryError> {
    if support.is_empty() {
        return Ok(OrthonormalBasis::trivial(a.measurements()));
    }
    Ok(orthonormal_basis(&a.columns(support), tol)?)
}

fn projected_dictionary_with_basis(
    a: &SamplingMatrix,
    support: &SupportSet,
    basis: &OrthonormalBasis,
    tol: RankTolerance,
) -> DenseMatrix {
    let mut b = project_complement(basis, a.matrix()).expect("basis built from A's own columns");
    let m = a.measurements();
    for i in 0..a.dimension() {
        if support.contains(i) {
            zero_column(&mut b, i);
            continue;
        }
        let norm = b.column_norm(i);
        // Column already inside span(A_S): no direction left to normalize.
        if norm <= tol.threshold(a.column_norms()[i], m, 1) {
            zero_column(&mut b, i);
            continue;
        }
        for row in 0..m {
            let v = b.get(row, i) / norm;
            b.set(row, i, v);
        }
    }
    b
}

fn zero_column(m: &mut DenseMatrix, col: usize) {
    for row in 0..m.rows() {
        m.set(row, col, 0.0);
    }
}

/// Indices of the `count` columns of `P_{R(residual)} B` with largest l2
/// norms, excluding `excluded` and zeroed columns; ties go to the smallest
/// index. Returned in selection (descending-score) order.
pub fn ssmp_identify(
    b: &DenseMatrix,
    residual_basis: &OrthonormalBasis,
    count: usize,
    excluded: &SupportSet,
) -> Result<Vec<usize>, RecoveryError> {
    if residual_basis.ambient_dim() != b.rows() {
        return Err(RecoveryError::DimensionMismatch {
            matrix_rows: b.rows(),
            observation_rows: residual_basis.ambient_dim(),
        });
    }
    // ‖P_R b_i‖ = ‖U_Rᵀ b_i‖ for an orthonormal U_R.
    let scores: Vec<f64> = if residual_basis.dim() == 0 {
        vec![0.0; b.cols()]
    } else {
        let coeffs = residual_basis.vectors().tr_matmul(b);
        (0..b.cols()).map(|j| coeffs.column_norm(j)).collect()
    };
    let candidates: Vec<(usize, f64)> = (0..b.cols())
        .filter(|&i| !excluded.contains(i) && b.column_norm(i) > 0.0)
        .map(|i| (i, scores[i]))
        .collect();
    if candidates.len() < count {
        return Err(RecoveryError::SelectionExhausted {
            requested: count,
            available: candidates.len(),
            partial: None,
        });
    }
    let mut ordered = rank_candidates(candidates);
    ordered.truncate(count);
    Ok(ordered)
}

/// Least-squares estimate with rows confined to `support`: the support rows
/// hold `A_S† Y` (minimum-norm when `A_S` is rank deficient), all other rows
/// are exactly zero.
pub fn least_squares_estimate(
    a: &SamplingMatrix,
    y: &ObservationMatrix,
    support: &SupportSet,
) -> Result<DenseMatrix, RecoveryError> {
    check_dimensions(a, y)?;
    if support.len() > a.measurements() {
        return Err(RecoveryError::OverdeterminedSupport {
            support_size: support.len(),
            measurements: a.measurements(),
        });
    }
    let n = a.dimension();
    let r = y.vector_count();
    let mut estimate = DenseMatrix::zeros(n, r);
    if support.is_empty() {
        return Ok(estimate);
    }
    let coeffs = solve_on_support(a, y.matrix(), support);
    for (row_idx, &col) in support.indices().iter().enumerate() {
        for j in 0..r {
            estimate.set(col, j, coeffs.get(row_idx, j));
        }
    }
    Ok(estimate)
}

/// `A_S† rhs` as a `|S| x r` block.
fn solve_on_support(a: &SamplingMatrix, rhs: &DenseMatrix, support: &SupportSet) -> DenseMatrix {
    let sub = a.columns(support);
    let svd = crate::linalg::thin_svd(&sub);
    let sigma_max = svd.singular_values.first().copied().unwrap_or(0.0);
    let thr = RankTolerance::default().threshold(sigma_max, sub.rows(), sub.cols());
    crate::linalg::pseudo_solve_svd(&svd, thr, rhs)
}

fn check_dimensions(a: &SamplingMatrix, y: &ObservationMatrix) -> Result<(), RecoveryError> {
    if a.measurements() != y.matrix().rows() {
        return Err(RecoveryError::DimensionMismatch {
            matrix_rows: a.measurements(),
            observation_rows: y.matrix().rows(),
        });
    }
    Ok(())
}

/// Run the SSMP pursuit (`L` indices per iteration, pruning to the `K`
/// largest rows at the end, LS re-estimate on the pruned support).
pub fn ssmp_recover(
    a: &SamplingMatrix,
    y: &ObservationMatrix,
    cfg: &SsmpConfig,
) -> Result<RecoveryResult, RecoveryError> {
    check_dimensions(a, y)?;
    cfg.validate(a.measurements())?;
    run_pursuit(a, y, cfg, cfg.iteration_cap(a.measurements()))
}

/// SSMP with one index per iteration, exposed under its own name so baseline
/// tables list it distinctly (rank-aware order recursive matching pursuit).
pub fn ra_ormp_recover(
    a: &SamplingMatrix,
    y: &ObservationMatrix,
    cfg: &SsmpConfig,
) -> Result<RecoveryResult, RecoveryError> {
    let mut single = cfg.clone();
    single.indices_per_iteration = 1;
    ssmp_recover(a, y, &single)
}

/// SSMP with an explicit iteration budget, possibly exceeding `K`. The
/// support can grow to `total_iterations * L` entries, so that product must
/// not exceed the number of measurements. Pruning at the end is unchanged.
pub fn ssmp_recover_extended(
    a: &SamplingMatrix,
    y: &ObservationMatrix,
    cfg: &SsmpConfig,
    total_iterations: usize,
) -> Result<RecoveryResult, RecoveryError> {
    let mut extended = cfg.clone();
    extended.max_iterations_override = Some(total_iterations);
    ssmp_recover(a, y, &extended)
}

fn run_pursuit(
    a: &SamplingMatrix,
    y: &ObservationMatrix,
    cfg: &SsmpConfig,
    iteration_cap: usize,
) -> Result<RecoveryResult, RecoveryError> {
    let tol = RankTolerance::default();
    let n = a.dimension();
    let r = y.vector_count();

    if y.matrix().is_zero() {
        return Ok(RecoveryResult {
            support: SupportSet::empty(),
            estimate: DenseMatrix::zeros(n, r),
            iterations_run: 0,
            trace: Vec::new(),
            stop_reason: StopReason::ExactZeroObservation,
        });
    }

    let y_basis = orthonormal_basis(y.matrix(), tol)?;
    let stop_at = cfg.epsilon.max(STOP_GUARD_FLOOR);

    let mut support = SupportSet::empty();
    let mut support_basis_cur = OrthonormalBasis::trivial(a.measurements());
    let mut estimate = DenseMatrix::zeros(n, r);
    let mut residual = y.matrix().clone();
    let mut guard = residual_subspace_distance(&y_basis, &support_basis_cur)?;
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut iterations = 0usize;

    while iterations < iteration_cap && guard > stop_at {
        let residual_basis = if iterations == 0 {
            y_basis.clone()
        } else {
            orthonormal_basis(&residual, tol)?
        };
        let dictionary = projected_dictionary_with_basis(a, &support, &support_basis_cur, tol);
        let selected =
            match ssmp_identify(&dictionary, &residual_basis, cfg.indices_per_iteration, &support) {
                Ok(sel) => sel,
                Err(RecoveryError::SelectionExhausted { requested, available, .. }) => {
                    return Err(RecoveryError::SelectionExhausted {
                        requested,
                        available,
                        partial: Some(Box::new(PartialRecovery {
                            support,
                            iterations_run: iterations,
                            trace,
                        })),
                    });
                }
                Err(other) => return Err(other),
            };

        support = support.union(&selected)?;
        support_basis_cur = support_basis(a, &support, tol)?;
        estimate = least_squares_estimate(a, y, &support)?;
        residual = y.matrix().sub(&a.matrix().matmul(&estimate));
        guard = residual_subspace_distance(&y_basis, &support_basis_cur)?;
        iterations += 1;
        trace.push(IterationRecord {
            selected,
            residual_norm: residual.frobenius_norm(),
            subspace_gap: guard,
        });
    }

    let stop_reason =
        if guard <= stop_at { StopReason::EpsilonMet } else { StopReason::IterationCapReached };

    // Prune to the K rows with largest l2 norms (debiasing), then re-solve.
    let (support, estimate) = if support.len() > cfg.sparsity {
        let pruned = prune_support(&estimate, &support, cfg.sparsity);
        let est = least_squares_estimate(a, y, &pruned)?;
        (pruned, est)
    } else {
        (support, estimate)
    };

    Ok(RecoveryResult { support, estimate, iterations_run: iterations, trace, stop_reason })
}

/// Keep the `k` support rows of `estimate` with largest l2 norms; ties break
/// toward the smaller index.
fn prune_support(estimate: &DenseMatrix, support: &SupportSet, k: usize) -> SupportSet {
    let mut ranked: Vec<usize> = support.indices().to_vec();
    ranked.sort_by(|&x, &y| {
        estimate
            .row_norm(y)
            .partial_cmp(&estimate.row_norm(x))
            .expect("row norms are finite")
            .then(x.cmp(&y))
    });
    ranked.truncate(k);
    SupportSet::from_unsorted(ranked).expect("pruned indices are distinct")
}
