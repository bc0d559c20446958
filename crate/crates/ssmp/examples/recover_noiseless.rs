//! Plant a row-sparse signal, observe it through a random Gaussian matrix,
//! and watch the pursuit walk the support.
//!
//! Run with: cargo run --example recover_noiseless

use ssmp::experiments::{generate_sampling_matrix, generate_signal, SignalModel, SignalSpec};
use ssmp::recovery::{ssmp_recover, ObservationMatrix, SsmpConfig};

fn main() {
    let (m, n, k, r) = (32, 128, 8, 4);
    let a = generate_sampling_matrix(m, n, 2024).unwrap();
    let spec = SignalSpec {
        dimension: n,
        vector_count: r,
        sparsity: k,
        model: SignalModel::Gaussian,
    };
    let signal = generate_signal(&spec, 7).unwrap();
    let y = ObservationMatrix::new(a.matrix().matmul(&signal.dense)).unwrap();

    println!("planted support: {:?}", signal.support().indices());

    let cfg = SsmpConfig::new(k, 2); // two indices per iteration
    let result = ssmp_recover(&a, &y, &cfg).unwrap();

    println!("recovered support: {:?}", result.support.indices());
    println!("stop reason: {} after {} iterations", result.stop_reason, result.iterations_run);
    println!("\n iter | selected        | residual norm | subspace gap");
    for (i, rec) in result.trace.iter().enumerate() {
        println!(
            " {:>4} | {:<15} | {:>13.6e} | {:>12.6e}",
            i + 1,
            format!("{:?}", rec.selected),
            rec.residual_norm,
            rec.subspace_gap
        );
    }

    let err = result.estimate.sub(&signal.dense).frobenius_norm();
    println!("\nreconstruction error ‖X - X̂‖_F = {err:.3e}");
}
