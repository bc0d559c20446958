//! Exhaustive verifiers and guarantee calculators on a small instance:
//! Kruskal rank, RIP constants, the exact-recovery predicate, the
//! fundamental measurement limit, and the extended-iteration thresholds.
//!
//! Run with: cargo run --example guarantees

use ssmp::experiments::generate_sampling_matrix;
use ssmp::recovery::SamplingMatrix;
use ssmp::verify::{
    fundamental_limit, krank, rip_constant, extended_iteration_guarantee, exact_recovery_rip_bound, exact_recovery_guarantee,
};

fn main() {
    // Small enough that every column subset can be enumerated.
    let raw = generate_sampling_matrix(8, 12, 31).unwrap();
    // Unit-norm columns, the normalization the guarantees assume.
    let mut matrix = raw.matrix().clone();
    for j in 0..matrix.cols() {
        let norm = matrix.column_norm(j);
        for i in 0..matrix.rows() {
            let v = matrix.get(i, j) / norm;
            matrix.set(i, j, v);
        }
    }
    let a = SamplingMatrix::new(matrix).unwrap();

    println!("krank(A) = {}", krank(&a).unwrap());
    println!("\nRIP constants (exhaustive):");
    for order in 1..=4 {
        let est = rip_constant(&a, order).unwrap();
        println!("  delta_{order} = {:.6}  (holds: {})", est.delta, est.holds());
    }

    println!("\nexact-recovery predicate at K=3, r=2, L=1:");
    print!("{}", exact_recovery_guarantee(&a, 3, 2, 1).to_kv_lines());
    println!(
        "\nthe RIP bound grows with the number of measurement vectors (K=8, L=2):\n  {}",
        (1..=8)
            .map(|r| format!("r={r}: {:.4}", exact_recovery_rip_bound(8, r, 2)))
            .collect::<Vec<_>>()
            .join("  ")
    );

    println!("\nfundamental measurement limits 2K - r + 1:");
    for (k, r) in [(50, 6), (12, 6), (8, 1)] {
        println!("  K={k:>2}, r={r}: m >= {}", fundamental_limit(k, r).unwrap());
    }

    println!("\nextended-iteration guarantee family (single measurement vector):");
    println!("  c | iterations (L=1) | RIP order factor | delta bound");
    for c in 2..=6 {
        let report = extended_iteration_guarantee(c, 10, 1).unwrap();
        let detail = |key: &str| {
            report
                .details
                .iter()
                .find(|(name, _)| name == key)
                .map(|(_, v)| v.clone())
                .unwrap()
        };
        println!(
            "  {c} | {:>16} | {:>16} | {:.3}",
            detail("iteration_budget"),
            detail("order_factor_ceil_1dp"),
            report.bound_value.unwrap()
        );
    }
}
