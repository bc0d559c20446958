//! Joint sparse recovery toolkit built around signal space matching pursuit.
//!
//! The multiple-measurement-vector problem asks for a row `K`-sparse matrix
//! `X` given observations `Y = A X (+ W)` through a wide sampling matrix
//! `A`. This crate provides:
//!
//! - [`recovery`]: the SSMP pursuit with its refined selection rule,
//!   pruning/debiasing, configurable stopping, and the RA-ORMP and
//!   extended-iteration variants;
//! - [`baselines`]: SOMP, RA-OMP, and the Oracle-LS error floor for
//!   comparisons;
//! - [`verify`]: exhaustive Kruskal-rank and RIP-constant computation on
//!   small instances plus the recovery-guarantee predicates built on them;
//! - [`experiments`]: a seeded, reproducible Monte Carlo harness producing
//!   ERR / ESRR / MSE tables as CSV;
//! - [`linalg`]: the dense subspace primitives everything else rests on;
//! - [`io`]: plain-CSV matrix files for the command-line tools.
//!
//! Start with the runnable examples (`cargo run --example recover_noiseless`
//! and friends); each demonstrates one capability end to end. The `ssmp`
//! binary wraps recovery, benchmarking, and the verifiers behind a small
//! CLI.

pub mod baselines;
pub mod experiments;
pub mod io;
pub mod linalg;
pub mod recovery;
pub mod rng;
pub mod verify;
