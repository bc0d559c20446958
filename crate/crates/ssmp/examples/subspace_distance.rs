//! Subspace geometry basics: orthonormal bases, projections, and the
//! distance between subspaces that drives the pursuit's selection rule.
//!
//! Run with: cargo run --example subspace_distance

use ssmp::linalg::{
    orthonormal_basis, project, residual_subspace_distance, subspace_distance, DenseMatrix,
    RankTolerance,
};

fn main() {
    let tol = RankTolerance::default();

    // Two lines in the plane at an angle theta: their distance is sin(theta).
    for degrees in [0.0f64, 30.0, 45.0, 90.0] {
        let theta = degrees.to_radians();
        let v = orthonormal_basis(&DenseMatrix::from_row_major(2, 1, vec![1.0, 0.0]), tol).unwrap();
        let w = orthonormal_basis(
            &DenseMatrix::from_row_major(2, 1, vec![theta.cos(), theta.sin()]),
            tol,
        )
        .unwrap();
        println!(
            "angle {degrees:>4}°: dist = {:.6}  (sin = {:.6})",
            subspace_distance(&v, &w).unwrap(),
            theta.sin()
        );
    }

    // A rank-deficient generating set still yields a clean basis.
    let m = DenseMatrix::from_row_major(3, 3, vec![1.0, 2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
    let basis = orthonormal_basis(&m, tol).unwrap();
    println!("\n3x3 matrix with a repeated direction: numerical rank {}", basis.dim());

    // Projection splits energy between a subspace and its complement.
    let target = DenseMatrix::from_row_major(3, 1, vec![1.0, 1.0, 1.0]);
    let onto = project(&basis, &target).unwrap();
    let away = target.sub(&onto);
    println!(
        "‖x‖² = {:.4} splits into ‖Px‖² = {:.4} + ‖(I-P)x‖² = {:.4}",
        target.frobenius_norm().powi(2),
        onto.frobenius_norm().powi(2),
        away.frobenius_norm().powi(2),
    );

    // The stopping guard of the pursuit: how far the observation space
    // sticks out of the span of the selected columns.
    let y_basis = orthonormal_basis(
        &DenseMatrix::from_row_major(3, 2, vec![1.0, 0.0, 0.0, 1.0, 0.0, 0.0]),
        tol,
    )
    .unwrap();
    let gap = residual_subspace_distance(&y_basis, &basis).unwrap();
    println!("subspace gap between the observation plane and the basis: {gap:.6}");
}
