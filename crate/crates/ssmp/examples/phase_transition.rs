//! Desk-scale Monte Carlo sweep: exact reconstruction ratio versus sparsity
//! for the pursuit variants and the classical baselines, printed as the same
//! CSV the `ssmp bench` subcommand writes.
//!
//! Run with: cargo run --release --example phase_transition

use ssmp::baselines::AlgorithmId;
use ssmp::experiments::{
    emit_csv, run_sweep, EpsilonMode, ExperimentConfig, GridAxis, Metric, RankSpec, SignalModel,
};

fn main() {
    let cfg = ExperimentConfig {
        measurements: 32,
        dimension: 128,
        rank: RankSpec::Fixed(5),
        sparsity: None,
        grid: GridAxis::Sparsity(vec![4, 8, 12, 16, 20]),
        algorithms: vec![
            AlgorithmId::SsmpL2,
            AlgorithmId::SsmpL3,
            AlgorithmId::RaOrmp,
            AlgorithmId::RaOmp,
            AlgorithmId::Somp,
        ],
        trials: 100,
        seed: 0xbeef,
        metric: Metric::Err,
        signal_model: SignalModel::Gaussian,
        epsilon_mode: EpsilonMode::Zero,
        fixed_matrix: false,
    };

    let (_, table) = run_sweep(&cfg).unwrap();
    print!("{}", emit_csv(&table));

    // Critical sparsity: the largest K at which every trial was exact.
    eprintln!();
    for alg in &cfg.algorithms {
        let critical = table
            .rows
            .iter()
            .filter(|row| row.algorithm == *alg && row.value == 1.0)
            .map(|row| row.grid as usize)
            .max();
        match critical {
            Some(k) => eprintln!("critical sparsity of {}: {k}", alg.tag()),
            None => eprintln!("critical sparsity of {}: below the grid", alg.tag()),
        }
    }
}
