//! Dense-matrix primitives and subspace geometry.
//!
//! Everything downstream (recovery, verifiers, experiments) is built on the
//! small set of operations in this module: orthonormal bases with a numerical
//! rank decision, orthogonal projections, singular values, and the subspace
//! distance between two linear subspaces of R^m.
//!
//! Subspaces are always represented by an explicit [`OrthonormalBasis`];
//! projections go through the basis (`Q (Qᵀ M)`), never through normal
//! equations. Zero-dimensional subspaces are first-class so that an empty
//! support set or an all-zero observation has a faithful representation.

use std::fmt;

mod svd;

pub(crate) use svd::SvdFactors;

/// Errors raised by the linear-algebra primitives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// Input contained NaN or infinite entries.
    NonFiniteInput,
    /// Operand dimensions are incompatible.
    ShapeMismatch { expected: String, found: String },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NonFiniteInput => write!(f, "input contains non-finite entries"),
            LinalgError::ShapeMismatch { expected, found } => {
                write!(f, "shape mismatch: expected {expected}, found {found}")
            }
        }
    }
}

impl std::error::Error for LinalgError {}

/// Row-major dense matrix of `f64` entries.
///
/// `rows >= 1` always; `cols == 0` is allowed and represents a map from the
/// trivial space (used for empty supports and trivial subspaces).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1, "matrix must have at least one row");
        DenseMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Build from a row-major entry vector. `data.len()` must equal `rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert!(rows >= 1, "matrix must have at least one row");
        assert_eq!(data.len(), rows * cols, "entry count must match dimensions");
        DenseMatrix { rows, cols, data }
    }

    /// Build entry-by-entry from a closure over `(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = DenseMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Single-column matrix from a slice.
    pub fn column_vector(v: &[f64]) -> Self {
        DenseMatrix::from_row_major(v.len(), 1, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    /// Contiguous view of row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Copy of column `j`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == 0.0)
    }

    pub fn transpose(&self) -> DenseMatrix {
        assert!(self.cols >= 1, "cannot transpose a zero-column matrix");
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// `self * other`.
    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let lhs_row = self.row(i);
            for (k, &lv) in lhs_row.iter().enumerate() {
                if lv == 0.0 {
                    continue;
                }
                let rhs_row = other.row(k);
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &rv) in out_row.iter_mut().zip(rhs_row.iter()) {
                    *o += lv * rv;
                }
            }
        }
        out
    }

    /// `selfᵀ * other`, computed without materializing the transpose.
    /// Requires `self.cols >= 1` so the result has at least one row.
    pub fn tr_matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.rows, other.rows, "row counts must agree");
        assert!(self.cols >= 1, "left operand must have at least one column");
        let mut out = DenseMatrix::zeros(self.cols, other.cols);
        for k in 0..self.rows {
            let lhs_row = self.row(k);
            let rhs_row = other.row(k);
            for (j, &lv) in lhs_row.iter().enumerate() {
                if lv == 0.0 {
                    continue;
                }
                let out_row = &mut out.data[j * other.cols..(j + 1) * other.cols];
                for (o, &rv) in out_row.iter_mut().zip(rhs_row.iter()) {
                    *o += lv * rv;
                }
            }
        }
        out
    }

    /// Entrywise difference `self - other`.
    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Entrywise sum `self + other`.
    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Copy with every entry multiplied by `factor`.
    pub fn scale(&self, factor: f64) -> DenseMatrix {
        let data = self.data.iter().map(|a| a * factor).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Matrix with the listed columns of `self`, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows, indices.len());
        for (jj, &j) in indices.iter().enumerate() {
            assert!(j < self.cols, "column index out of range");
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn column_norm(&self, j: usize) -> f64 {
        (0..self.rows).map(|i| self.get(i, j).powi(2)).sum::<f64>().sqrt()
    }

    pub fn row_norm(&self, i: usize) -> f64 {
        self.row(i).iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// How singular values are thresholded when deciding numerical rank.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RankTolerance {
    /// Threshold `value * sigma_max * max(rows, cols)`.
    Relative(f64),
    /// Threshold `value` as given.
    Absolute(f64),
}

impl RankTolerance {
    /// Cutoff below which a singular value counts as zero.
    pub fn threshold(&self, sigma_max: f64, rows: usize, cols: usize) -> f64 {
        match *self {
            RankTolerance::Relative(v) => v * sigma_max * rows.max(cols) as f64,
            RankTolerance::Absolute(v) => v,
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            RankTolerance::Relative(v) | RankTolerance::Absolute(v) => v,
        }
    }
}

impl Default for RankTolerance {
    /// Relative threshold at machine epsilon.
    fn default() -> Self {
        RankTolerance::Relative(f64::EPSILON)
    }
}

/// Orthonormal basis of a subspace of R^m, possibly zero-dimensional.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    ambient_dim: usize,
    vectors: DenseMatrix,
}

impl OrthonormalBasis {
    /// Basis of the trivial subspace `{0}` of R^m.
    pub fn trivial(ambient_dim: usize) -> Self {
        OrthonormalBasis { ambient_dim, vectors: DenseMatrix::zeros(ambient_dim.max(1), 0) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the spanned subspace.
    pub fn dim(&self) -> usize {
        self.vectors.cols()
    }

    /// The basis vectors as the columns of an `m x dim` matrix.
    pub fn vectors(&self) -> &DenseMatrix {
        &self.vectors
    }
}

/// Orthonormal basis of the column space of `m`, with singular directions
/// below the rank threshold dropped. An all-zero or zero-column input yields
/// the trivial basis.
pub fn orthonormal_basis(
    m: &DenseMatrix,
    tol: RankTolerance,
) -> Result<OrthonormalBasis, LinalgError> {
    if !m.is_finite() {
        return Err(LinalgError::NonFiniteInput);
    }
    if m.cols() == 0 || m.is_zero() {
        return Ok(OrthonormalBasis::trivial(m.rows()));
    }
    let svd = svd::jacobi_svd(m);
    let sigma_max = svd.singular_values.first().copied().unwrap_or(0.0);
    let thr = tol.threshold(sigma_max, m.rows(), m.cols());
    let rank = svd.singular_values.iter().take_while(|s| **s > thr).count();
    let cols: Vec<usize> = (0..rank).collect();
    Ok(OrthonormalBasis { ambient_dim: m.rows(), vectors: svd.left.select_columns(&cols) })
}

/// Orthogonal projection `P_V M = Q (Qᵀ M)` of the columns of `m` onto the
/// subspace spanned by `basis`. A zero-dimensional basis projects to zero.
pub fn project(basis: &OrthonormalBasis, m: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    if basis.ambient_dim() != m.rows() {
        return Err(LinalgError::ShapeMismatch {
            expected: format!("{} rows", basis.ambient_dim()),
            found: format!("{} rows", m.rows()),
        });
    }
    if basis.dim() == 0 {
        return Ok(DenseMatrix::zeros(m.rows(), m.cols()));
    }
    let coeffs = basis.vectors.tr_matmul(m);
    Ok(basis.vectors.matmul(&coeffs))
}

/// Complement projection `M - P_V M`.
pub fn project_complement(
    basis: &OrthonormalBasis,
    m: &DenseMatrix,
) -> Result<DenseMatrix, LinalgError> {
    Ok(m.sub(&project(basis, m)?))
}

/// Distance between the subspaces spanned by `v` and `w`:
/// `sqrt(max{p, q} - Σ_ij <v_i, w_j>²)` with the radicand clamped at zero to
/// absorb roundoff. Two trivial subspaces are at distance zero.
pub fn subspace_distance(
    v: &OrthonormalBasis,
    w: &OrthonormalBasis,
) -> Result<f64, LinalgError> {
    if v.ambient_dim() != w.ambient_dim() {
        return Err(LinalgError::ShapeMismatch {
            expected: format!("ambient dimension {}", v.ambient_dim()),
            found: format!("ambient dimension {}", w.ambient_dim()),
        });
    }
    let (p, q) = (v.dim(), w.dim());
    if p == 0 && q == 0 {
        return Ok(0.0);
    }
    let overlap = if p == 0 || q == 0 {
        0.0
    } else {
        v.vectors.tr_matmul(&w.vectors).frobenius_norm().powi(2)
    };
    let radicand = (p.max(q) as f64 - overlap).max(0.0);
    Ok(radicand.sqrt())
}

/// `‖P⊥_S U_Y‖_F` for an orthonormal `U_Y`: the distance between `span(U_Y)`
/// and its projection onto `span(S)`. This is the quantity the recovery loop
/// compares against the stopping threshold.
pub fn residual_subspace_distance(
    y_basis: &OrthonormalBasis,
    s_basis: &OrthonormalBasis,
) -> Result<f64, LinalgError> {
    if y_basis.ambient_dim() != s_basis.ambient_dim() {
        return Err(LinalgError::ShapeMismatch {
            expected: format!("ambient dimension {}", y_basis.ambient_dim()),
            found: format!("ambient dimension {}", s_basis.ambient_dim()),
        });
    }
    let residual = project_complement(s_basis, &y_basis.vectors)?;
    Ok(residual.frobenius_norm())
}

/// All `min(rows, cols)` singular values of `m`, descending.
pub fn singular_values(m: &DenseMatrix) -> Result<Vec<f64>, LinalgError> {
    if !m.is_finite() {
        return Err(LinalgError::NonFiniteInput);
    }
    let p = m.rows().min(m.cols());
    if p == 0 {
        return Ok(Vec::new());
    }
    let svd = svd::jacobi_svd(m);
    let mut out = svd.singular_values;
    out.resize(p, 0.0);
    Ok(out)
}

/// Thin SVD used by least-squares and rank decisions elsewhere in the crate.
pub(crate) fn thin_svd(m: &DenseMatrix) -> SvdFactors {
    svd::jacobi_svd(m)
}

/// Minimum-norm least-squares solve through a precomputed SVD.
pub(crate) fn pseudo_solve_svd(
    factors: &SvdFactors,
    threshold: f64,
    rhs: &DenseMatrix,
) -> DenseMatrix {
    svd::pseudo_solve(factors, threshold, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix::from_fn(rows, cols, |_, _| rng.next_gaussian())
    }

    fn random_basis(rng: &mut SplitMix64, ambient: usize, dim: usize) -> OrthonormalBasis {
        let m = random_matrix(rng, ambient, dim);
        orthonormal_basis(&m, RankTolerance::default()).unwrap()
    }

    /// Rank of a 6x4 matrix by exhaustive 4x4 minor determinants; used as an
    /// independent oracle for the SVD rank decision.
    fn rank4_by_minors(m: &DenseMatrix) -> usize {
        assert_eq!((m.rows(), m.cols()), (6, 4));
        let det4 = |rows: &[usize]| -> f64 {
            // Laplace expansion along the first selected row.
            let minor3 = |r: &[usize], c: &[usize]| -> f64 {
                m.get(r[0], c[0]) * (m.get(r[1], c[1]) * m.get(r[2], c[2])
                    - m.get(r[1], c[2]) * m.get(r[2], c[1]))
                    - m.get(r[0], c[1]) * (m.get(r[1], c[0]) * m.get(r[2], c[2])
                        - m.get(r[1], c[2]) * m.get(r[2], c[0]))
                    + m.get(r[0], c[2]) * (m.get(r[1], c[0]) * m.get(r[2], c[1])
                        - m.get(r[1], c[1]) * m.get(r[2], c[0]))
            };
            let mut det = 0.0;
            for (drop, sign) in [(0usize, 1.0), (1, -1.0), (2, 1.0), (3, -1.0)] {
                let sub_cols: Vec<usize> = (0..4).filter(|c| *c != drop).collect();
                det += sign * m.get(rows[0], drop) * minor3(&rows[1..], &sub_cols);
            }
            det
        };
        let mut best = 0.0f64;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    for d in c + 1..6 {
                        best = best.max(det4(&[a, b, c, d]).abs());
                    }
                }
            }
        }
        if best > 1e-9 { 4 } else { 3 } // full-rank check only, enough for the oracle
    }

    #[test]
    fn basis_of_identity_is_full() {
        let basis = orthonormal_basis(&DenseMatrix::identity(3), RankTolerance::default()).unwrap();
        assert_eq!(basis.dim(), 3);
        let gram = basis.vectors().tr_matmul(basis.vectors());
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((gram.get(i, j) - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn basis_of_repeated_column_has_rank_one() {
        // [e1, 2 e1] in R^3
        let m = DenseMatrix::from_row_major(3, 2, vec![1.0, 2.0, 0.0, 0.0, 0.0, 0.0]);
        let basis = orthonormal_basis(&m, RankTolerance::default()).unwrap();
        assert_eq!(basis.dim(), 1);
        assert!((basis.vectors().get(0, 0).abs() - 1.0).abs() < 1e-12);
        assert!(basis.vectors().get(1, 0).abs() < 1e-12);
        assert!(basis.vectors().get(2, 0).abs() < 1e-12);
    }

    #[test]
    fn basis_rank_matches_minor_determinant_oracle() {
        let mut rng = SplitMix64::new(0x5eed_0001);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 6, 4);
            let basis = orthonormal_basis(&m, RankTolerance::default()).unwrap();
            assert_eq!(basis.dim(), rank4_by_minors(&m));
            let gram = basis.vectors().tr_matmul(basis.vectors());
            for i in 0..4 {
                for j in 0..4 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((gram.get(i, j) - expect).abs() < 1e-10, "UᵀU far from identity");
                }
            }
        }
    }

    #[test]
    fn basis_of_zero_matrix_is_trivial() {
        let basis = orthonormal_basis(&DenseMatrix::zeros(4, 3), RankTolerance::default()).unwrap();
        assert_eq!(basis.dim(), 0);
        let basis = orthonormal_basis(&DenseMatrix::zeros(4, 0), RankTolerance::default()).unwrap();
        assert_eq!(basis.dim(), 0);
    }

    #[test]
    fn basis_rejects_non_finite_input() {
        let m = DenseMatrix::from_row_major(2, 1, vec![f64::NAN, 0.0]);
        assert!(matches!(
            orthonormal_basis(&m, RankTolerance::default()),
            Err(LinalgError::NonFiniteInput)
        ));
    }

    #[test]
    fn projection_onto_axis() {
        let e1 = DenseMatrix::from_row_major(2, 1, vec![1.0, 0.0]);
        let basis = orthonormal_basis(&e1, RankTolerance::default()).unwrap();
        let m = DenseMatrix::from_row_major(2, 1, vec![1.0, 1.0]);
        let p = project(&basis, &m).unwrap();
        assert!((p.get(0, 0) - 1.0).abs() < 1e-12);
        assert!(p.get(1, 0).abs() < 1e-12);
    }

    #[test]
    fn projection_onto_trivial_subspace_is_zero() {
        let basis = OrthonormalBasis::trivial(3);
        let m = DenseMatrix::from_row_major(3, 2, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let p = project(&basis, &m).unwrap();
        assert!(p.is_zero());
        assert_eq!((p.rows(), p.cols()), (3, 2));
    }

    #[test]
    fn projection_shape_error() {
        let basis = OrthonormalBasis::trivial(3);
        let m = DenseMatrix::zeros(4, 1);
        assert!(matches!(project(&basis, &m), Err(LinalgError::ShapeMismatch { .. })));
    }

    #[test]
    fn projection_is_idempotent_and_contractive() {
        let mut rng = SplitMix64::new(0x5eed_0002);
        for _ in 0..20 {
            let basis = random_basis(&mut rng, 7, 3);
            let m = random_matrix(&mut rng, 7, 2);
            let p1 = project(&basis, &m).unwrap();
            let p2 = project(&basis, &p1).unwrap();
            assert!(p1.sub(&p2).frobenius_norm() < 1e-10, "P² = P violated");
            assert!(p1.frobenius_norm() <= m.frobenius_norm() + 1e-12);
        }
    }

    #[test]
    fn pythagoras_identity() {
        let mut rng = SplitMix64::new(0x5eed_0003);
        for _ in 0..20 {
            let basis = random_basis(&mut rng, 8, 4);
            let m = random_matrix(&mut rng, 8, 3);
            let p = project(&basis, &m).unwrap();
            let c = project_complement(&basis, &m).unwrap();
            let total = m.frobenius_norm().powi(2);
            let split = p.frobenius_norm().powi(2) + c.frobenius_norm().powi(2);
            assert!((total - split).abs() <= 1e-9 * total.max(1.0));
        }
    }

    #[test]
    fn distance_of_coinciding_lines_is_zero() {
        let e1 = DenseMatrix::from_row_major(2, 1, vec![1.0, 0.0]);
        let v = orthonormal_basis(&e1, RankTolerance::default()).unwrap();
        assert_eq!(subspace_distance(&v, &v).unwrap(), 0.0);
    }

    #[test]
    fn distance_of_perpendicular_lines_is_one() {
        let v = orthonormal_basis(
            &DenseMatrix::from_row_major(2, 1, vec![1.0, 0.0]),
            RankTolerance::default(),
        )
        .unwrap();
        let w = orthonormal_basis(
            &DenseMatrix::from_row_major(2, 1, vec![0.0, 1.0]),
            RankTolerance::default(),
        )
        .unwrap();
        assert!((subspace_distance(&v, &w).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distance_at_forty_five_degrees() {
        let v = orthonormal_basis(
            &DenseMatrix::from_row_major(2, 1, vec![1.0, 0.0]),
            RankTolerance::default(),
        )
        .unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let w = orthonormal_basis(
            &DenseMatrix::from_row_major(2, 1, vec![s, s]),
            RankTolerance::default(),
        )
        .unwrap();
        assert!((subspace_distance(&v, &w).unwrap() - s).abs() < 1e-10);
    }

    #[test]
    fn distance_of_line_to_containing_plane() {
        // dist(span{e1}, span{e1, e2}) = sqrt(2 - 1) = 1
        let v = orthonormal_basis(
            &DenseMatrix::from_row_major(2, 1, vec![1.0, 0.0]),
            RankTolerance::default(),
        )
        .unwrap();
        let w = orthonormal_basis(&DenseMatrix::identity(2), RankTolerance::default()).unwrap();
        assert!((subspace_distance(&v, &w).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distance_with_trivial_subspaces() {
        let t = OrthonormalBasis::trivial(3);
        assert_eq!(subspace_distance(&t, &t).unwrap(), 0.0);
        let mut rng = SplitMix64::new(0x5eed_0004);
        let v = random_basis(&mut rng, 3, 2);
        // dist({0}, V) = sqrt(dim V) by the definition with p = 0
        assert!((subspace_distance(&t, &v).unwrap() - (2.0f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn distance_is_invariant_to_basis_choice() {
        let mut rng = SplitMix64::new(0x5eed_0005);
        for _ in 0..10 {
            let v = random_basis(&mut rng, 6, 3);
            let w = random_basis(&mut rng, 6, 2);
            // Re-orthonormalize a randomly mixed copy of V's columns.
            let mix = random_matrix(&mut rng, 3, 3);
            let mixed = v.vectors().matmul(&mix);
            let v2 = orthonormal_basis(&mixed, RankTolerance::default()).unwrap();
            assert_eq!(v2.dim(), v.dim());
            let d1 = subspace_distance(&v, &w).unwrap();
            let d2 = subspace_distance(&v2, &w).unwrap();
            assert!((d1 - d2).abs() < 1e-9);
        }
    }

    #[test]
    fn residual_distance_of_contained_subspace_is_zero() {
        let mut rng = SplitMix64::new(0x5eed_0006);
        let s = random_basis(&mut rng, 6, 4);
        // Y spanned by combinations of S's basis vectors
        let mix = random_matrix(&mut rng, 4, 2);
        let y = orthonormal_basis(&s.vectors().matmul(&mix), RankTolerance::default()).unwrap();
        assert!(residual_subspace_distance(&y, &s).unwrap() < 1e-10);
    }

    #[test]
    fn residual_distance_from_trivial_support() {
        let mut rng = SplitMix64::new(0x5eed_0007);
        let y = random_basis(&mut rng, 5, 3);
        let t = OrthonormalBasis::trivial(5);
        let d = residual_subspace_distance(&y, &t).unwrap();
        assert!((d - (3.0f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn residual_distance_matches_definition_route() {
        // ‖P⊥_S U_Y‖_F = dist(span(U_Y), orthonormalized P_S U_Y)
        let mut rng = SplitMix64::new(0x5eed_0008);
        for _ in 0..20 {
            let s = random_basis(&mut rng, 8, 3);
            let y = random_basis(&mut rng, 8, 2);
            let direct = residual_subspace_distance(&y, &s).unwrap();
            let projected = project(&s, y.vectors()).unwrap();
            let proj_basis = orthonormal_basis(&projected, RankTolerance::default()).unwrap();
            let via_def = subspace_distance(&y, &proj_basis).unwrap();
            assert!((direct - via_def).abs() < 1e-9, "{direct} vs {via_def}");
        }
    }

    #[test]
    fn singular_values_of_identity_and_diagonal() {
        assert_eq!(singular_values(&DenseMatrix::identity(3)).unwrap(), vec![1.0, 1.0, 1.0]);
        let d = DenseMatrix::from_row_major(2, 2, vec![3.0, 0.0, 0.0, 2.0]);
        let sv = singular_values(&d).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-12 && (sv[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_squared_are_gram_eigenvalues() {
        // Characteristic-polynomial oracle at 3x3: the eigenvalues of MᵀM for
        // a 5x3 M are the roots of λ³ - c2 λ² + c1 λ - c0.
        let mut rng = SplitMix64::new(0x5eed_0009);
        for _ in 0..10 {
            let m = random_matrix(&mut rng, 5, 3);
            let g = m.tr_matmul(&m);
            let c2 = g.get(0, 0) + g.get(1, 1) + g.get(2, 2);
            let minor = |i: usize, j: usize, k: usize, l: usize| {
                g.get(i, i) * g.get(j, j) - g.get(k, l) * g.get(l, k)
            };
            let c1 = minor(0, 1, 0, 1) + minor(0, 2, 0, 2) + minor(1, 2, 1, 2);
            let det3 = g.get(0, 0) * (g.get(1, 1) * g.get(2, 2) - g.get(1, 2) * g.get(2, 1))
                - g.get(0, 1) * (g.get(1, 0) * g.get(2, 2) - g.get(1, 2) * g.get(2, 0))
                + g.get(0, 2) * (g.get(1, 0) * g.get(2, 1) - g.get(1, 1) * g.get(2, 0));
            // Trigonometric solution for the symmetric (real-rooted) cubic
            // λ³ - c2 λ² + c1 λ - det3 = 0, depressed via λ = t + c2/3.
            let p = c1 - c2 * c2 / 3.0;
            let q = 2.0 * c2.powi(3) / 27.0 - c2 * c1 / 3.0 + det3;
            let a = (-p / 3.0).max(0.0).sqrt();
            let cos_arg =
                if a == 0.0 { 0.0 } else { (q / (2.0 * a.powi(3))).clamp(-1.0, 1.0) };
            let phi = cos_arg.acos() / 3.0;
            let mut roots: Vec<f64> = (0..3)
                .map(|k| 2.0 * a * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos()
                    + c2 / 3.0)
                .collect();
            roots.sort_by(|x, y| y.partial_cmp(x).unwrap());
            let sv = singular_values(&m).unwrap();
            for (s, r) in sv.iter().zip(roots.iter()) {
                assert!((s * s - r).abs() < 1e-8 * r.max(1.0), "σ²={} root={}", s * s, r);
            }
        }
    }

    #[test]
    fn singular_values_of_wide_matrix() {
        let mut rng = SplitMix64::new(0x5eed_000a);
        let m = random_matrix(&mut rng, 3, 7);
        let sv = singular_values(&m).unwrap();
        assert_eq!(sv.len(), 3);
        let sv_t = singular_values(&m.transpose()).unwrap();
        for (a, b) in sv.iter().zip(sv_t.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn metric_axioms_hold_on_random_triples() {
        let mut rng = SplitMix64::new(0x5eed_000b);
        for _ in 0..50 {
            let du = 1 + (rng.next_u64() % 4) as usize;
            let dv = 1 + (rng.next_u64() % 4) as usize;
            let dw = 1 + (rng.next_u64() % 4) as usize;
            let u = random_basis(&mut rng, 8, du);
            let v = random_basis(&mut rng, 8, dv);
            let w = random_basis(&mut rng, 8, dw);
            let duv = subspace_distance(&u, &v).unwrap();
            let dvw = subspace_distance(&v, &w).unwrap();
            let duw = subspace_distance(&u, &w).unwrap();
            assert!(duv >= 0.0 && dvw >= 0.0 && duw >= 0.0);
            assert!((duv - subspace_distance(&v, &u).unwrap()).abs() <= 1e-10);
            assert!(duw <= duv + dvw + 1e-10, "triangle inequality violated");
        }
    }
}
