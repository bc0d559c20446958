//! Exhaustive small-instance verifiers for recovery guarantees.
//!
//! Kruskal rank and restricted isometry constants are NP-hard to certify in
//! general, so both computations enumerate every column subset and refuse
//! instances past an explicit size guard rather than silently falling back
//! to sampling. On top of them sit the guarantee predicates: the noiseless
//! exact-recovery condition, the fundamental measurement limit, the
//! noisy-selection condition with its projector-perturbation bound, and the
//! extended-iteration condition family solved numerically by bisection.
//!
//! Every predicate evaluates to a [`GuaranteeReport`] carrying both operands
//! so callers can display margins, not just booleans.

use std::fmt;

use crate::linalg::{orthonormal_basis, singular_values, DenseMatrix, RankTolerance};
use crate::recovery::{RowSparseSignal, SamplingMatrix};

/// Ceiling on exhaustive subset enumeration.
pub const ENUMERATION_GUARD: u128 = 1_000_000;

/// Largest signal dimension accepted for exhaustive Kruskal-rank search.
pub const KRANK_DIMENSION_GUARD: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    /// The exhaustive computation would exceed the enumeration guard.
    SizeGuardExceeded { description: String },
    InvalidInput(String),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::SizeGuardExceeded { description } => {
                write!(f, "not computable at this size: {description}")
            }
            VerifyError::InvalidInput(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for VerifyError {}

/// Outcome of a guarantee predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuaranteeStatus {
    Satisfied,
    Violated,
    /// One of the operands could not be computed at this instance size (or
    /// no instance was supplied to measure).
    NotComputable,
}

impl fmt::Display for GuaranteeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            GuaranteeStatus::Satisfied => "satisfied",
            GuaranteeStatus::Violated => "violated",
            GuaranteeStatus::NotComputable => "not-computable",
        };
        f.write_str(tag)
    }
}

/// Evaluated guarantee predicate with both operands and auxiliary values.
///
/// `status` is `Satisfied`/`Violated` only when both `bound_value` and
/// `measured_value` are present. The comparison direction is predicate
/// specific and spelled out in the `condition` detail (RIP-style predicates
/// need `measured < bound`, the Kruskal-rank predicate needs
/// `measured >= bound`).
#[derive(Debug, Clone)]
pub struct GuaranteeReport {
    pub predicate: String,
    pub bound_value: Option<f64>,
    pub measured_value: Option<f64>,
    pub status: GuaranteeStatus,
    /// Predicate-specific key-value context, serialized verbatim.
    pub details: Vec<(String, String)>,
}

impl GuaranteeReport {
    fn not_computable(predicate: &str) -> Self {
        GuaranteeReport {
            predicate: predicate.to_string(),
            bound_value: None,
            measured_value: None,
            status: GuaranteeStatus::NotComputable,
            details: Vec::new(),
        }
    }

    fn with_detail(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.details.push((key.to_string(), value.to_string()));
        self
    }

    fn compare(mut self, bound: f64, measured: f64) -> Self {
        self.bound_value = Some(bound);
        self.measured_value = Some(measured);
        self.status = if measured < bound {
            GuaranteeStatus::Satisfied
        } else {
            GuaranteeStatus::Violated
        };
        self
    }

    /// Flat `key = value` serialization consumed by the CLI `check`
    /// subcommands.
    pub fn to_kv_lines(&self) -> String {
        let fmt_opt = |v: Option<f64>| match v {
            Some(x) => format!("{x}"),
            None => "none".to_string(),
        };
        let mut out = String::new();
        out.push_str(&format!("predicate = {}\n", self.predicate));
        out.push_str(&format!("bound_value = {}\n", fmt_opt(self.bound_value)));
        out.push_str(&format!("measured_value = {}\n", fmt_opt(self.measured_value)));
        out.push_str(&format!("status = {}\n", self.status));
        for (k, v) in &self.details {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }
}

/// Restricted isometry constant of one order.
#[derive(Debug, Clone, Copy)]
pub struct RipEstimate {
    pub order: usize,
    /// `max over |S| = order of max(σ_max²(A_S) - 1, 1 - σ_min²(A_S))`.
    /// A value of 1 or more means the matrix does not satisfy the RIP of
    /// this order at all; see [`RipEstimate::holds`].
    pub delta: f64,
    /// True when every subset of the given order was enumerated.
    pub exhaustive: bool,
}

impl RipEstimate {
    /// Whether the matrix satisfies the RIP of this order (`delta < 1`).
    pub fn holds(&self) -> bool {
        self.delta < 1.0
    }
}

/// Exact binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Visit every k-subset of `0..n` in lexicographic order. The callback
/// returns `false` to stop early; the function reports whether enumeration
/// ran to completion.
pub(crate) fn for_each_subset(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> bool {
    if k > n {
        return true;
    }
    if k == 0 {
        return visit(&[]);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        // Advance the rightmost index that can still move.
        let mut pos = k;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            if idx[pos] != pos + n - k {
                break;
            }
            if pos == 0 {
                return true;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn numerical_rank(m: &DenseMatrix) -> usize {
    let sv = singular_values(m).expect("finite by construction");
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let thr = RankTolerance::default().threshold(sigma_max, m.rows(), m.cols());
    sv.iter().take_while(|s| **s > thr).count()
}

/// Kruskal rank: the largest `k` such that every `k`-subset of columns is
/// linearly independent. Exhaustive descending search with early exit on the
/// first rank-deficient subset; guarded to `n <= 24`.
pub fn krank(a: &SamplingMatrix) -> Result<usize, VerifyError> {
    let n = a.dimension();
    if n > KRANK_DIMENSION_GUARD {
        return Err(VerifyError::SizeGuardExceeded {
            description: format!("krank enumeration requires n <= {KRANK_DIMENSION_GUARD}, n = {n}"),
        });
    }
    let max_k = a.measurements().min(n);
    for k in (1..=max_k).rev() {
        let mut all_independent = true;
        for_each_subset(n, k, |subset| {
            let sub = a.matrix().select_columns(subset);
            if numerical_rank(&sub) < k {
                all_independent = false;
                return false;
            }
            true
        });
        if all_independent {
            return Ok(k);
        }
    }
    Ok(0)
}

/// Exhaustive RIP constant of the given order:
/// `delta = max over |S| = order of max(σ_max²(A_S) - 1, 1 - σ_min²(A_S))`.
pub fn rip_constant(a: &SamplingMatrix, order: usize) -> Result<RipEstimate, VerifyError> {
    let n = a.dimension();
    if order == 0 || order > n {
        return Err(VerifyError::InvalidInput(format!(
            "RIP order must lie in 1..={n}, got {order}"
        )));
    }
    let count = binomial(n, order);
    if count > ENUMERATION_GUARD {
        return Err(VerifyError::SizeGuardExceeded {
            description: format!(
                "RIP of order {order} needs {count} subsets, guard is {ENUMERATION_GUARD}"
            ),
        });
    }
    let m = a.measurements();
    let mut delta: f64 = 0.0;
    for_each_subset(n, order, |subset| {
        let sub = a.matrix().select_columns(subset);
        let sv = singular_values(&sub).expect("finite by construction");
        let sigma_max = sv.first().copied().unwrap_or(0.0);
        let sigma_min = if order > m { 0.0 } else { sv.last().copied().unwrap_or(0.0) };
        delta = delta.max(sigma_max * sigma_max - 1.0).max(1.0 - sigma_min * sigma_min);
        true
    });
    Ok(RipEstimate { order, delta, exhaustive: true })
}

/// Upper bound on the RIP constant that guarantees exact noiseless recovery
/// in the rank-deficient case:
/// `max{ sqrt(r) / (sqrt(K + r/4) + sqrt(r/4)), sqrt(L) / (sqrt(K) + 1.15 sqrt(L)) }`.
pub fn exact_recovery_rip_bound(sparsity: usize, rank: usize, per_iteration: usize) -> f64 {
    let (k, r, l) = (sparsity as f64, rank as f64, per_iteration as f64);
    let first = r.sqrt() / ((k + r / 4.0).sqrt() + (r / 4.0).sqrt());
    let second = l.sqrt() / (k.sqrt() + 1.15 * l.sqrt());
    first.max(second)
}

/// RIP order at which [`exact_recovery_rip_bound`] applies: `L (K - r) + r + 1`.
pub fn exact_recovery_rip_order(sparsity: usize, rank: usize, per_iteration: usize) -> usize {
    per_iteration * (sparsity - rank) + rank + 1
}

/// Exact-recovery guarantee for the noiseless pursuit. In the full-rank case
/// (`r = K`) the predicate is `krank(A) >= K + 1`; otherwise it compares the
/// exhaustive RIP constant of order `L(K-r)+r+1` against [`exact_recovery_rip_bound`].
/// Instances past the enumeration guards yield `NotComputable` rather than
/// an error.
pub fn exact_recovery_guarantee(
    a: &SamplingMatrix,
    sparsity: usize,
    rank: usize,
    per_iteration: usize,
) -> GuaranteeReport {
    let report = GuaranteeReport::not_computable("exact-recovery")
        .with_detail("K", sparsity)
        .with_detail("r", rank)
        .with_detail("L", per_iteration);
    if rank == 0 || rank > sparsity || per_iteration == 0 {
        return report.with_detail("premise", "requires 1 <= r <= K and L >= 1");
    }
    if per_iteration > sparsity || per_iteration * sparsity > a.measurements() {
        return report.with_detail("premise", "requires L <= min(K, m/K)");
    }
    let report =
        report.with_detail("max_iterations", sparsity - rank + rank.div_ceil(per_iteration));
    if rank == sparsity {
        let required = (sparsity + 1) as f64;
        match krank(a) {
            Ok(kr) => {
                let mut rep = report.with_detail("condition", "krank(A) >= K+1");
                rep.bound_value = Some(required);
                rep.measured_value = Some(kr as f64);
                rep.status = if kr as f64 >= required {
                    GuaranteeStatus::Satisfied
                } else {
                    GuaranteeStatus::Violated
                };
                rep
            }
            Err(VerifyError::SizeGuardExceeded { description }) => {
                report.with_detail("condition", "krank(A) >= K+1").with_detail("note", description)
            }
            Err(VerifyError::InvalidInput(msg)) => report.with_detail("note", msg),
        }
    } else {
        let bound = exact_recovery_rip_bound(sparsity, rank, per_iteration);
        let order = exact_recovery_rip_order(sparsity, rank, per_iteration);
        let report = report.with_detail("condition", "delta < bound").with_detail("rip_order", order);
        match rip_constant(a, order) {
            Ok(est) => report.compare(bound, est.delta),
            Err(VerifyError::SizeGuardExceeded { description }) => {
                let mut rep = report.with_detail("note", description);
                rep.bound_value = Some(bound);
                rep
            }
            Err(VerifyError::InvalidInput(msg)) => {
                let mut rep = report.with_detail("note", msg);
                rep.bound_value = Some(bound);
                rep
            }
        }
    }
}

/// Bound-only variant of [`exact_recovery_guarantee`] for when no matrix is at
/// hand: reports the RIP bound and order, status `NotComputable`.
pub fn exact_recovery_bound_report(
    sparsity: usize,
    rank: usize,
    per_iteration: usize,
) -> Result<GuaranteeReport, VerifyError> {
    if rank == 0 || rank > sparsity || per_iteration == 0 || per_iteration > sparsity {
        return Err(VerifyError::InvalidInput(
            "requires 1 <= r <= K and 1 <= L <= K".into(),
        ));
    }
    let mut report = GuaranteeReport::not_computable("exact-recovery")
        .with_detail("K", sparsity)
        .with_detail("r", rank)
        .with_detail("L", per_iteration)
        .with_detail("max_iterations", sparsity - rank + rank.div_ceil(per_iteration));
    if rank == sparsity {
        report = report.with_detail("condition", "krank(A) >= K+1");
        report.bound_value = Some((sparsity + 1) as f64);
    } else {
        report = report
            .with_detail("condition", "delta < bound")
            .with_detail("rip_order", exact_recovery_rip_order(sparsity, rank, per_iteration));
        report.bound_value = Some(exact_recovery_rip_bound(sparsity, rank, per_iteration));
    }
    Ok(report)
}

/// Fundamental minimum number of measurements for exact joint sparse
/// recovery: `2K - r + 1`.
pub fn fundamental_limit(sparsity: usize, rank: usize) -> Result<usize, VerifyError> {
    if rank == 0 || rank > sparsity {
        return Err(VerifyError::InvalidInput(format!(
            "rank must lie in 1..=K, got r = {rank}, K = {sparsity}"
        )));
    }
    Ok(2 * sparsity - rank + 1)
}

/// Noisy-scenario selection guarantee. Computes the noise-to-signal
/// perturbation bound `eta = (σ_min(AX)/σ_max(W) - 1)^{-1}`, the exhaustive
/// RIP constant of order `L(K-r)+r+1`, the direct projector-difference norm
/// `eta_bar = ‖P_{R(AX)} - P_{R(Y)}‖_2`, and evaluates the admissibility and
/// support-selection conditions.
pub fn noisy_selection_guarantee(
    a: &SamplingMatrix,
    signal: &RowSparseSignal,
    noise: &DenseMatrix,
    per_iteration: usize,
) -> Result<GuaranteeReport, VerifyError> {
    let sparsity = signal.sparsity();
    let rank = signal.vector_count();
    if per_iteration == 0 || per_iteration > sparsity {
        return Err(VerifyError::InvalidInput("requires 1 <= L <= K".into()));
    }
    if noise.rows() != a.measurements() || noise.cols() != rank {
        return Err(VerifyError::InvalidInput("noise shape must match A X".into()));
    }
    if rank > sparsity {
        return Err(VerifyError::InvalidInput("signal needs r <= K (independent rows)".into()));
    }

    let x_dense = signal.to_dense(a.dimension());
    let ax = a.matrix().matmul(&x_dense);
    let sv_ax = singular_values(&ax).map_err(|e| VerifyError::InvalidInput(e.to_string()))?;
    let sigma_min_ax = if rank > a.measurements() {
        0.0
    } else {
        sv_ax.get(rank - 1).copied().unwrap_or(0.0)
    };
    let sigma_max_w = singular_values(noise)
        .map_err(|e| VerifyError::InvalidInput(e.to_string()))?
        .first()
        .copied()
        .unwrap_or(0.0);

    let mut report = GuaranteeReport::not_computable("noisy-selection")
        .with_detail("K", sparsity)
        .with_detail("r", rank)
        .with_detail("L", per_iteration)
        .with_detail("sigma_min_ax", sigma_min_ax)
        .with_detail("sigma_max_w", sigma_max_w);

    // Projector perturbation measured directly on this instance.
    let y = ax.add(noise);
    let eta_bar = projector_difference_norm(&ax, &y)?;
    report = report.with_detail("eta_bar", eta_bar);

    if sigma_min_ax <= sigma_max_w {
        // Precondition of the perturbation bound fails: noise has swallowed
        // the weakest signal direction.
        report.bound_value = Some(sigma_min_ax);
        report.measured_value = Some(sigma_max_w);
        report.status = GuaranteeStatus::Violated;
        return Ok(report.with_detail("condition", "sigma_min(AX) > sigma_max(W)"));
    }
    let eta =
        if sigma_max_w == 0.0 { 0.0 } else { 1.0 / (sigma_min_ax / sigma_max_w - 1.0) };
    report = report.with_detail("eta", eta);

    let order = exact_recovery_rip_order(sparsity, rank, per_iteration);
    let est = match rip_constant(a, order) {
        Ok(est) => est,
        Err(VerifyError::SizeGuardExceeded { description }) => {
            return Ok(report
                .with_detail("rip_order", order)
                .with_detail("note", description));
        }
        Err(other) => return Err(other),
    };
    let delta = est.delta;
    report = report.with_detail("rip_order", order).with_detail("delta", delta);

    if !est.holds() {
        report.bound_value = Some(1.0);
        report.measured_value = Some(delta);
        report.status = GuaranteeStatus::Violated;
        return Ok(report.with_detail("condition", "delta < 1"));
    }

    // Admissibility: eta < sqrt((1-delta)/(1+delta)).
    let admissible = ((1.0 - delta) / (1.0 + delta)).sqrt();
    if eta >= admissible {
        return Ok(report
            .with_detail("condition", "eta < sqrt((1-delta)/(1+delta))")
            .compare(admissible, eta));
    }

    // Support selection: margin(delta) > noise term(eta, delta).
    let noise_term = 2.0 * eta * (1.0 + delta).sqrt()
        / ((1.0 - delta).sqrt() - eta * (1.0 + delta).sqrt());
    let margin = if rank == sparsity {
        1.0 - delta
    } else {
        selection_margin(delta, sparsity, rank, per_iteration)
    };
    Ok(report
        .with_detail("condition", "selection margin exceeds noise term")
        .compare(margin, noise_term))
}

/// `f(delta, r) = sqrt(r (1 - delta) / K) - min{delta, sqrt(r delta² / (L (1 - delta²)(1 - delta)))}`.
fn selection_margin(delta: f64, sparsity: usize, rank: usize, per_iteration: usize) -> f64 {
    let (k, r, l) = (sparsity as f64, rank as f64, per_iteration as f64);
    let lead = (r * (1.0 - delta) / k).sqrt();
    let alt = (r * delta * delta / (l * (1.0 - delta * delta) * (1.0 - delta))).sqrt();
    lead - delta.min(alt)
}

/// `‖P_{R(u)} - P_{R(v)}‖_2` via the largest singular value of the projector
/// difference.
fn projector_difference_norm(u: &DenseMatrix, v: &DenseMatrix) -> Result<f64, VerifyError> {
    let tol = RankTolerance::default();
    let bu = orthonormal_basis(u, tol).map_err(|e| VerifyError::InvalidInput(e.to_string()))?;
    let bv = orthonormal_basis(v, tol).map_err(|e| VerifyError::InvalidInput(e.to_string()))?;
    let m = u.rows();
    let proj = |basis: &crate::linalg::OrthonormalBasis| -> DenseMatrix {
        if basis.dim() == 0 {
            DenseMatrix::zeros(m, m)
        } else {
            basis.vectors().matmul(&basis.vectors().transpose())
        }
    };
    let diff = proj(&bu).sub(&proj(&bv));
    let sv = singular_values(&diff).map_err(|e| VerifyError::InvalidInput(e.to_string()))?;
    Ok(sv.first().copied().unwrap_or(0.0))
}

/// Extended-iteration guarantee family for single measurement vectors: for
/// an integer `c >= 2`, running `max{K, floor(4cK/L)}` iterations succeeds
/// once the RIP constant of order `floor(K (1 + 4c - 4c/(e^c - 1)))` clears
/// a threshold found by bisecting the three underlying constraints.
pub fn extended_iteration_guarantee(
    c: usize,
    sparsity: usize,
    per_iteration: usize,
) -> Result<GuaranteeReport, VerifyError> {
    if c < 2 {
        return Err(VerifyError::InvalidInput(format!("requires c >= 2, got {c}")));
    }
    if sparsity == 0 || per_iteration == 0 || per_iteration > sparsity {
        return Err(VerifyError::InvalidInput("requires 1 <= L <= K".into()));
    }
    let cf = c as f64;
    let order_factor = 1.0 + 4.0 * cf - 4.0 * cf / (cf.exp() - 1.0);
    let order = (sparsity as f64 * order_factor).floor() as usize;
    let budget = sparsity.max(4 * c * sparsity / per_iteration);

    // Largest delta satisfying each constraint, then the tightest of the three.
    let ln2 = std::f64::consts::LN_2;
    let g_exp = |delta: f64| (-cf * (1.0 - delta) * (1.0 - delta)).exp();
    let root1 = bisect_decreasing(|d| cf * (1.0 - d) * (1.0 - d) - 2.0 * ln2);
    let root2 = bisect_decreasing(|d| 0.5 - (d / (2.0 * (1.0 + d))).sqrt() - g_exp(d));
    let root3 =
        bisect_decreasing(|d| 0.5 - d / ((1.0 + d) * (1.0 - d) * (1.0 - d)) - g_exp(d));
    let bound = root1.min(root2).min(root3);

    let mut report = GuaranteeReport::not_computable("extended-iteration")
        .with_detail("c", c)
        .with_detail("K", sparsity)
        .with_detail("L", per_iteration)
        .with_detail("rip_order", order)
        .with_detail("order_factor", format!("{order_factor:.6}"))
        .with_detail("order_factor_ceil_1dp", format!("{:.1}", (order_factor * 10.0).ceil() / 10.0))
        .with_detail("iteration_budget", budget)
        .with_detail("delta_bound_residual_decay", format!("{root1:.6}"))
        .with_detail("delta_bound_multi_stage", format!("{root2:.6}"))
        .with_detail("delta_bound_single_stage", format!("{root3:.6}"));
    report.bound_value = Some(bound);
    Ok(report)
}

/// Largest `delta` in `(0, 1)` with `g(delta) >= 0` for a decreasing `g`,
/// bisected well past the 1e-6 tolerance the reports promise.
fn bisect_decreasing(g: impl Fn(f64) -> f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0 - 1e-12);
    if g(lo) <= 0.0 {
        return 0.0;
    }
    if g(hi) >= 0.0 {
        return hi;
    }
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if g(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
