//! One-sided Jacobi singular value decomposition.
//!
//! Columns of a working copy are rotated pairwise until mutually orthogonal;
//! the column norms are then the singular values and the normalized columns
//! the left singular vectors. Right vectors are accumulated from the applied
//! rotations. Jacobi converges slowly compared to bidiagonal QR but delivers
//! high relative accuracy on small singular values, which the RIP and rank
//! computations depend on, and it is fully deterministic.

use super::DenseMatrix;

/// Thin SVD `M = U diag(sigma) Vᵀ` with `sigma` sorted descending.
///
/// `left` is `rows x p`, `right` is `cols x p` where `p = min(rows, cols)`.
/// Columns of `left` whose singular value is exactly zero are zero vectors.
pub(crate) struct SvdFactors {
    pub left: DenseMatrix,
    pub singular_values: Vec<f64>,
    pub right: DenseMatrix,
}

const MAX_SWEEPS: usize = 128;

pub(crate) fn jacobi_svd(m: &DenseMatrix) -> SvdFactors {
    assert!(m.cols() >= 1, "svd of a zero-column matrix");
    if m.rows() >= m.cols() {
        jacobi_svd_tall(m)
    } else {
        // M = V Σ Uᵀ where Mᵀ = U Σ Vᵀ; swap the factors back.
        let t = jacobi_svd_tall(&m.transpose());
        SvdFactors { left: t.right, singular_values: t.singular_values, right: t.left }
    }
}

fn jacobi_svd_tall(m: &DenseMatrix) -> SvdFactors {
    let rows = m.rows();
    let cols = m.cols();

    // Column-major working copies: u holds the rotated columns of M,
    // v accumulates the rotations starting from the identity.
    let mut u: Vec<Vec<f64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..cols).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let eps = f64::EPSILON;
    let mut sweep = 0;
    loop {
        let mut rotated = false;
        for i in 0..cols.saturating_sub(1) {
            for j in i + 1..cols {
                let (a, b, d) = {
                    let (ci, cj) = (&u[i], &u[j]);
                    let mut a = 0.0;
                    let mut b = 0.0;
                    let mut d = 0.0;
                    for k in 0..rows {
                        a += ci[k] * ci[k];
                        b += cj[k] * cj[k];
                        d += ci[k] * cj[k];
                    }
                    (a, b, d)
                };
                // Converged pair: off-diagonal negligible relative to the
                // column norms, or both columns effectively zero. The
                // norm-product form cannot overflow the way a*b can.
                if d.abs() <= 2.0 * eps * a.sqrt() * b.sqrt() || d.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let zeta = (b - a) / (2.0 * d);
                let t = if zeta.abs() > 1e150 {
                    // zeta² overflows; to double precision the tangent is
                    // 1/(2 zeta), which still rotates the small column.
                    0.5 / zeta
                } else if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut u, i, j, c, s);
                rotate_pair(&mut v, i, j, c, s);
                rotated = true;
            }
        }
        sweep += 1;
        if !rotated || sweep >= MAX_SWEEPS {
            debug_assert!(sweep < MAX_SWEEPS, "jacobi svd failed to converge");
            break;
        }
    }

    // Singular values are the column norms; order descending, ties keeping
    // the original column order for determinism.
    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = u.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap().then(x.cmp(&y)));

    let mut left = DenseMatrix::zeros(rows, cols);
    let mut right = DenseMatrix::zeros(cols, cols);
    let mut singular_values = Vec::with_capacity(cols);
    for (slot, &src) in order.iter().enumerate() {
        let sigma = norms[src];
        singular_values.push(sigma);
        if sigma > 0.0 {
            for k in 0..rows {
                left.set(k, slot, u[src][k] / sigma);
            }
        }
        for k in 0..cols {
            right.set(k, slot, v[src][k]);
        }
    }
    SvdFactors { left, singular_values, right }
}

fn rotate_pair(cols: &mut [Vec<f64>], i: usize, j: usize, c: f64, s: f64) {
    let (head, tail) = cols.split_at_mut(j);
    let ci = &mut head[i];
    let cj = &mut tail[0];
    for k in 0..ci.len() {
        let xi = ci[k];
        let xj = cj[k];
        ci[k] = c * xi - s * xj;
        cj[k] = s * xi + c * xj;
    }
}

/// Minimum-norm least-squares solve `argmin ‖rhs - M x‖_F` through the SVD,
/// zeroing directions whose singular value is at or below `threshold`.
pub(crate) fn pseudo_solve(svd: &SvdFactors, threshold: f64, rhs: &DenseMatrix) -> DenseMatrix {
    let coeffs = svd.left.tr_matmul(rhs);
    let mut scaled = coeffs;
    for (i, sigma) in svd.singular_values.iter().enumerate() {
        let inv = if *sigma > threshold { 1.0 / sigma } else { 0.0 };
        for j in 0..scaled.cols() {
            let v = scaled.get(i, j) * inv;
            scaled.set(i, j, v);
        }
    }
    svd.right.matmul(&scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn reconstruct(f: &SvdFactors) -> DenseMatrix {
        let p = f.singular_values.len();
        let mut scaled = f.right.clone();
        for j in 0..p {
            for i in 0..scaled.rows() {
                scaled.set(i, j, scaled.get(i, j) * f.singular_values[j]);
            }
        }
        f.left.matmul(&scaled.transpose())
    }

    #[test]
    fn factorization_reconstructs_input() {
        let mut rng = SplitMix64::new(0xdec0_0001);
        for &(rows, cols) in &[(6usize, 4usize), (4, 6), (5, 5), (8, 1)] {
            let m = DenseMatrix::from_fn(rows, cols, |_, _| rng.next_gaussian());
            let f = jacobi_svd(&m);
            let back = reconstruct(&f);
            assert!(m.sub(&back).frobenius_norm() < 1e-10 * m.frobenius_norm().max(1.0));
            for w in f.singular_values.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn zero_matrix_has_zero_singular_values() {
        let f = jacobi_svd(&DenseMatrix::zeros(4, 3));
        assert!(f.singular_values.iter().all(|s| *s == 0.0));
    }

    #[test]
    fn planted_spectrum_is_recovered_to_high_relative_accuracy() {
        // U diag(s) Vᵀ with singular values spanning fifteen decades; Jacobi
        // should recover each to near machine precision relative accuracy.
        let mut rng = SplitMix64::new(0xdec0_0005);
        let (m, n) = (14usize, 9usize);
        let gauss = DenseMatrix::from_fn(m, m, |_, _| rng.next_gaussian());
        let u = crate::linalg::orthonormal_basis(&gauss, crate::linalg::RankTolerance::default())
            .unwrap()
            .vectors()
            .clone();
        let gauss = DenseMatrix::from_fn(n, n, |_, _| rng.next_gaussian());
        let v = crate::linalg::orthonormal_basis(&gauss, crate::linalg::RankTolerance::default())
            .unwrap()
            .vectors()
            .clone();
        let planted: Vec<f64> = (0..n).map(|i| 10f64.powf(-(i as f64) * 15.0 / n as f64)).collect();
        let mut ud = DenseMatrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                ud.set(i, j, u.get(i, j) * planted[j]);
            }
        }
        let a = ud.matmul(&v.transpose());
        let f = jacobi_svd(&a);
        for (got, want) in f.singular_values.iter().zip(planted.iter()) {
            let err = (got - want).abs();
            assert!(
                err <= 1e-13 * planted[0] || err <= 1e-10 * want,
                "sigma {want:.3e} recovered as {got:.3e}"
            );
        }
    }

    #[test]
    fn extreme_column_scales_converge() {
        // Columns spanning three hundred orders of magnitude: the rotation
        // tangent saturates and the convergence test must not overflow.
        let mut m = DenseMatrix::zeros(8, 4);
        for i in 0..8 {
            m.set(i, 0, 1e150 * ((i * 7 % 5) as f64 - 2.0));
            m.set(i, 1, m.get(i, 0));
            m.set(i, 2, 1e-150 * ((i * 3 % 7) as f64 - 3.0));
        }
        let f = jacobi_svd(&m);
        assert!((f.singular_values[0] - 6e150).abs() < 1e137);
        assert!(f.singular_values[1] > 1e-151 && f.singular_values[1] < 1e-149);
        assert_eq!(f.singular_values[2], 0.0);
    }

    #[test]
    fn pseudo_solve_recovers_consistent_system() {
        let mut rng = SplitMix64::new(0xdec0_0002);
        let a = DenseMatrix::from_fn(8, 3, |_, _| rng.next_gaussian());
        let x = DenseMatrix::from_fn(3, 2, |_, _| rng.next_gaussian());
        let y = a.matmul(&x);
        let sol = pseudo_solve(&jacobi_svd(&a), 1e-12, &y);
        assert!(sol.sub(&x).frobenius_norm() < 1e-9);
    }

    #[test]
    fn pseudo_solve_is_minimum_norm_when_rank_deficient() {
        // Two identical columns: any split of the coefficient fits equally;
        // the minimum-norm solution splits it evenly.
        let a = DenseMatrix::from_row_major(3, 2, vec![1.0, 1.0, 2.0, 2.0, 0.0, 0.0]);
        let y = DenseMatrix::from_row_major(3, 1, vec![2.0, 4.0, 0.0]);
        let f = jacobi_svd(&a);
        let thr = f.singular_values[0] * 1e-12;
        let sol = pseudo_solve(&f, thr, &y);
        assert!((sol.get(0, 0) - 1.0).abs() < 1e-10);
        assert!((sol.get(1, 0) - 1.0).abs() < 1e-10);
    }
}
