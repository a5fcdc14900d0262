// SPDX-License-Identifier: Apache-2.0

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::config::{AlgorithmId, ExperimentConfig};
use super::dump;
use super::report::{ExperimentReport, TrialRow};
use crate::algorithms::{khdac, subsample_filter, subsample_khdac, KhdacParams, RecoveryOutcome};
use crate::detection::{detect_khd, rectangular_audit, DetectionOutcome, Hypothesis, RectanglePlan};
use crate::error::{invalid, Error, Result};
use crate::exact::verify_clique;
use crate::graph::{trial_rng, AdjacencyOracle, HiddenClique, InstanceSpec, QueryLedger, VertexSet};
use crate::numeric;
use crate::reductions::query_budget_check;

/// Runs every trial of `config` and returns rows in trial order.
///
/// A trial that errors or panics yields an `error` row. Its queries are not
/// added to `total_queries`, and its `raw_queries` is 0, so the two always
/// agree.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    if let Some(dir) = &config.dump_dir {
        std::fs::create_dir_all(dir)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads())
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let total = AtomicU64::new(0);
    let rows: Vec<Vec<TrialRow>> = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|t| guarded_trial(config, t, &total))
            .collect()
    });
    let report = ExperimentReport {
        config: config.clone(),
        rows: rows.into_iter().flatten().collect(),
        total_queries: total.load(Ordering::Relaxed),
    };
    if let Some(path) = &config.output {
        report.write_csv(path)?;
    }
    Ok(report)
}

fn guarded_trial(config: &ExperimentConfig, trial: usize, total: &AtomicU64) -> Vec<TrialRow> {
    let seed = config.seed(trial);
    let result = panic::catch_unwind(AssertUnwindSafe(|| run_trial(config, trial, seed)));
    let message = match result {
        Ok(Ok(rows)) => {
            total.fetch_add(rows.iter().map(|r| r.raw_queries).sum(), Ordering::Relaxed);
            return rows;
        }
        Ok(Err(e)) => e.to_string(),
        Err(payload) => payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into()),
    };
    log::warn!("trial {trial} (seed {seed}) failed: {message}");
    vec![TrialRow {
        trial,
        seed,
        algorithm: config.algorithm.to_string(),
        n: config.n,
        k: config.clique_param().unwrap_or(0),
        p: None,
        status: "error".into(),
        exact_match: false,
        raw_queries: 0,
        elapsed_ms: 0.0,
        verified: None,
        truth: None,
        audit_passed: None,
        budget_passed: None,
        error: Some(message),
    }]
}

fn new_ledger(config: &ExperimentConfig) -> QueryLedger {
    if config.record_queries {
        QueryLedger::recording()
    } else {
        QueryLedger::new()
    }
}

fn need_k(config: &ExperimentConfig) -> Result<usize> {
    config.clique_param().ok_or_else(|| invalid(format!("{} needs k", config.algorithm)))
}

fn run_trial(config: &ExperimentConfig, trial: usize, seed: u64) -> Result<Vec<TrialRow>> {
    if config.algorithm.is_detection() {
        let null = InstanceSpec::erdos_renyi(config.n, seed);
        let planted = config.instance(seed);
        Ok(vec![
            detection_row(config, trial, seed, &null, Hypothesis::H0)?,
            detection_row(config, trial, seed, &planted, Hypothesis::H1)?,
        ])
    } else {
        Ok(vec![recovery_row(config, trial, seed)?])
    }
}

fn recover(
    config: &ExperimentConfig,
    oracle: &AdjacencyOracle,
    ledger: &mut QueryLedger,
    seed: u64,
) -> Result<(RecoveryOutcome, Option<f64>)> {
    let n = config.n;
    let t = config.tunables();
    let mut rng = trial_rng(seed);
    match config.algorithm {
        AlgorithmId::Khdac => {
            let mut params = match config.l_in {
                Some(l) => KhdacParams::new(n, l, t)?,
                None => KhdacParams::for_clique_size(n, need_k(config)? as f64, t)?,
            };
            if let Some(th) = config.threshold {
                params = params.with_threshold(th);
            }
            Ok((khdac(oracle, ledger, &params, &mut rng)?, None))
        }
        AlgorithmId::SubsampleKhdac => {
            let k = need_k(config)?;
            let p = config.p.unwrap_or_else(|| numeric::subsample_rate(n, k));
            Ok((subsample_khdac(oracle, ledger, k, p, t, &mut rng)?, Some(p.min(1.0))))
        }
        AlgorithmId::SubsampleFilter => {
            let k = need_k(config)?;
            let p = config.p.unwrap_or_else(|| numeric::filter_rate(n, k));
            Ok((subsample_filter(oracle, ledger, k, p, t, &mut rng)?, Some(p.min(1.0))))
        }
        AlgorithmId::DetectKhd | AlgorithmId::DetectSubsampled => unreachable!(),
    }
}

fn recovery_row(config: &ExperimentConfig, trial: usize, seed: u64) -> Result<TrialRow> {
    let oracle = AdjacencyOracle::build(&config.instance(seed))?;
    let hidden = oracle.hidden_clique();
    let mut ledger = new_ledger(config);
    let (out, p) = recover(config, &oracle, &mut ledger, seed)?;
    let verified = if out.is_recovered() {
        Some(verify_clique(&oracle, &mut QueryLedger::new(), &out.clique)?)
    } else {
        None
    };
    if let Some(dir) = &config.dump_dir {
        dump::write_ledger(&dir.join(format!("trial-{trial}.ledger.json")), &ledger)?;
    }
    Ok(TrialRow {
        trial,
        seed,
        algorithm: config.algorithm.to_string(),
        n: config.n,
        k: hidden.len(),
        p,
        status: out.status.to_string(),
        exact_match: out.is_recovered() && out.clique == hidden,
        raw_queries: ledger.raw_count(),
        elapsed_ms: out.elapsed.as_secs_f64() * 1e3,
        verified,
        truth: None,
        audit_passed: None,
        budget_passed: config.budget.map(|b| query_budget_check(&ledger, b).passed),
        error: None,
    })
}

/// The plan depends only on the trial seed, so both hypotheses of a pair
/// probe the same rectangle.
fn detection_plan(config: &ExperimentConfig, seed: u64) -> Result<(RectanglePlan, Option<f64>)> {
    let n = config.n;
    let mut rng = trial_rng(seed);
    match config.algorithm {
        AlgorithmId::DetectKhd => {
            let l = match config.l_in {
                Some(l) => l,
                None => numeric::khdac_sample_size(n, need_k(config)? as f64),
            };
            Ok((RectanglePlan::sampled(&VertexSet::range(n), l, &mut rng)?, None))
        }
        AlgorithmId::DetectSubsampled => {
            let k = need_k(config)?;
            let p = config.p.unwrap_or_else(|| numeric::subsample_rate(n, k));
            Ok((RectanglePlan::subsampled(n, k, p, &mut rng)?, Some(p.min(1.0))))
        }
        _ => unreachable!(),
    }
}

fn detection_row(
    config: &ExperimentConfig,
    trial: usize,
    seed: u64,
    spec: &InstanceSpec,
    truth: Hypothesis,
) -> Result<TrialRow> {
    let started = Instant::now();
    let (plan, p) = detection_plan(config, seed)?;
    let oracle = AdjacencyOracle::build(spec)?;
    let mut ledger = new_ledger(config);
    let sealed = plan.clone().seal(&mut ledger)?;
    let out: DetectionOutcome = detect_khd(&oracle, &mut ledger, &sealed, config.threshold)?;
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let audit_passed = if config.audit {
        Some(rectangular_audit(&ledger, &plan)?.passed)
    } else {
        None
    };
    if let Some(dir) = &config.dump_dir {
        write_detection_dump(dir, trial, truth, &ledger, &plan)?;
    }
    Ok(TrialRow {
        trial,
        seed,
        algorithm: config.algorithm.to_string(),
        n: config.n,
        k: oracle.hidden_clique().len(),
        p,
        status: out.decision.to_string(),
        exact_match: out.decision == truth,
        raw_queries: ledger.raw_count(),
        elapsed_ms,
        verified: None,
        truth: Some(truth),
        audit_passed,
        budget_passed: config.budget.map(|b| query_budget_check(&ledger, b).passed),
        error: None,
    })
}

fn write_detection_dump(
    dir: &Path,
    trial: usize,
    truth: Hypothesis,
    ledger: &QueryLedger,
    plan: &RectanglePlan,
) -> Result<()> {
    dump::write_ledger(&dir.join(format!("trial-{trial}-{truth}.ledger.json")), ledger)?;
    dump::write_plan(&dir.join(format!("trial-{trial}.plan")), plan)
}
