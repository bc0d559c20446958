//! Recovery under measurement noise with the calibrated stopping threshold
//! ‖W‖_F / σ_max(Y), compared against the oracle least-squares floor.
//!
//! Run with: cargo run --example noisy_recovery

use ssmp::baselines::oracle_ls;
use ssmp::experiments::{
    generate_noise, generate_sampling_matrix, generate_signal, SignalModel, SignalSpec,
};
use ssmp::recovery::{ssmp_recover, ObservationMatrix, SsmpConfig};

fn main() {
    let (m, n, k, r) = (32, 128, 10, 5);
    let a = generate_sampling_matrix(m, n, 77).unwrap();
    let spec = SignalSpec {
        dimension: n,
        vector_count: r,
        sparsity: k,
        model: SignalModel::Gaussian,
    };
    let signal = generate_signal(&spec, 88).unwrap();

    println!("SNR (dB) | epsilon    | iters | support hit | ssmp error | oracle error");
    println!("{}", "-".repeat(75));
    for snr_db in [10.0, 20.0, 30.0, 40.0] {
        let noise = generate_noise(m, r, k, snr_db, 99).unwrap();
        let y = ObservationMatrix::with_noise_power(
            a.matrix().matmul(&signal.dense).add(&noise),
            noise.frobenius_norm(),
        )
        .unwrap();

        // The calibrated threshold stops the loop once the observation space
        // is explained down to the noise level.
        let epsilon = y.calibrated_epsilon().unwrap();
        let cfg = SsmpConfig::new(k, 2).with_epsilon(epsilon);
        let result = ssmp_recover(&a, &y, &cfg).unwrap();
        let oracle = oracle_ls(&a, &y, signal.support()).unwrap();

        println!(
            "{snr_db:>8} | {epsilon:>9.4e} | {:>5} | {:>11} | {:>9.4e} | {:>9.4e}",
            result.iterations_run,
            if result.support == *signal.support() { "exact" } else { "missed" },
            result.estimate.sub(&signal.dense).frobenius_norm(),
            oracle.sub(&signal.dense).frobenius_norm(),
        );
    }
}
