// SPDX-License-Identifier: Apache-2.0

//! Seeded Monte-Carlo experiments over the algorithms and detectors.
//!
//! An [`ExperimentConfig`] names one algorithm, an instance template and a
//! trial count. [`run_experiment`] builds a fresh oracle and ledger per trial,
//! runs trials on a bounded worker pool and returns rows in trial order.

pub mod bench;
pub mod config;
pub mod dump;
pub mod kv;
pub mod report;
pub mod runner;

pub use bench::{run_bench, BenchConfig, BenchPoint, BenchReport, KRule};
pub use config::{AlgorithmId, ExperimentConfig, THREADS_ENV};
pub use dump::{read_ledger, read_plan, write_ledger, write_plan, LedgerDump};
pub use report::{Aggregate, ExperimentReport, TrialRow, CSV_HEADER};
pub use runner::run_experiment;
