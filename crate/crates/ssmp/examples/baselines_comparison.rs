//! One rank-deficient instance, every algorithm: the pursuit variants next
//! to SOMP, RA-OMP, and the oracle error floor.
//!
//! Run with: cargo run --example baselines_comparison

use ssmp::baselines::{oracle_ls, ra_omp_recover, somp_recover};
use ssmp::experiments::{generate_sampling_matrix, generate_signal, SignalModel, SignalSpec};
use ssmp::recovery::{ra_ormp_recover, ssmp_recover, ObservationMatrix, SsmpConfig, SupportSet};

fn main() {
    // Sparsity well past the easy regime: r = 5 measurement vectors,
    // K = 14 nonzero rows, 32 measurements.
    let (m, n, k, r) = (32, 128, 14, 5);
    let a = generate_sampling_matrix(m, n, 11).unwrap();
    let spec = SignalSpec {
        dimension: n,
        vector_count: r,
        sparsity: k,
        model: SignalModel::Gaussian,
    };
    let signal = generate_signal(&spec, 1011).unwrap();
    let y = ObservationMatrix::new(a.matrix().matmul(&signal.dense)).unwrap();
    let truth = signal.support();

    println!("planted support: {:?}\n", truth.indices());
    println!("{:<10} | {:>6} | {:>11} | support", "algorithm", "hits", "error");
    println!("{}", "-".repeat(60));

    let report = |name: &str, support: &SupportSet, error: f64| {
        let hits = support.indices().iter().filter(|i| truth.contains(**i)).count();
        println!(
            "{name:<10} | {hits:>4}/{k} | {error:>11.4e} | {:?}",
            support.indices()
        );
    };

    let ssmp2 = ssmp_recover(&a, &y, &SsmpConfig::new(k, 2)).unwrap();
    report("ssmp-L2", &ssmp2.support, ssmp2.estimate.sub(&signal.dense).frobenius_norm());

    let ssmp3 = ssmp_recover(&a, &y, &SsmpConfig::new(k, 3)).unwrap();
    report("ssmp-L3", &ssmp3.support, ssmp3.estimate.sub(&signal.dense).frobenius_norm());

    let ormp = ra_ormp_recover(&a, &y, &SsmpConfig::new(k, 1)).unwrap();
    report("ra-ormp", &ormp.support, ormp.estimate.sub(&signal.dense).frobenius_norm());

    let ra = ra_omp_recover(&a, &y, k).unwrap();
    report("ra-omp", &ra.support, ra.estimate.sub(&signal.dense).frobenius_norm());

    let somp = somp_recover(&a, &y, k).unwrap();
    report("somp", &somp.support, somp.estimate.sub(&signal.dense).frobenius_norm());

    let oracle = oracle_ls(&a, &y, truth).unwrap();
    report("oracle-ls", truth, oracle.sub(&signal.dense).frobenius_norm());
}
