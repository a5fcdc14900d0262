// SPDX-License-Identifier: Apache-2.0

//! Multi-point sweeps.

use std::fmt::Write as _;
use std::str::FromStr;

use super::config::ExperimentConfig;
use super::report::Aggregate;
use super::runner::run_experiment;
use crate::error::{Error, Result};
use crate::numeric;

/// How the clique size follows `n` across a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KRule {
    /// `⌈mult · sqrt(n log n)⌉`, written `sqrt:<mult>`.
    SqrtNLogN(f64),
    /// `⌈n^e⌉`, written `pow:<e>`.
    Power(f64),
    /// A constant, written `fixed:<k>`.
    Fixed(usize),
}

impl KRule {
    pub fn k(self, n: usize) -> usize {
        let k = match self {
            KRule::SqrtNLogN(m) => numeric::sqrt_n_log_n(n, m),
            KRule::Power(e) => numeric::ceil((n as f64).powf(e)),
            KRule::Fixed(k) => k,
        };
        k.min(n)
    }
}

impl FromStr for KRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("k rule `{s}`: expected sqrt:<m>, pow:<e> or fixed:<k>"));
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        match name {
            "sqrt" => arg.parse().map(KRule::SqrtNLogN).map_err(|_| bad()),
            "pow" => arg.parse().map(KRule::Power).map_err(|_| bad()),
            "fixed" => arg.parse().map(KRule::Fixed).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Template; `n`, `k` and `output` are overridden per point.
    pub base: ExperimentConfig,
    pub points: Vec<(usize, usize)>,
}

impl BenchConfig {
    pub fn from_rule(base: ExperimentConfig, ns: &[usize], rule: KRule) -> Self {
        Self {
            base,
            points: ns.iter().map(|&n| (n, rule.k(n))).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchPoint {
    pub n: usize,
    pub k: usize,
    pub aggregate: Aggregate,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub points: Vec<BenchPoint>,
}

impl BenchReport {
    /// Least-squares slope of log mean queries against log n; `None` unless
    /// at least two distinct `n` were run.
    pub fn query_slope(&self) -> Option<f64> {
        let mut ns: Vec<usize> = self.points.iter().map(|p| p.n).collect();
        ns.dedup();
        if ns.len() < 2 {
            return None;
        }
        let xs: Vec<f64> = self.points.iter().map(|p| p.n as f64).collect();
        let ys: Vec<f64> = self.points.iter().map(|p| p.aggregate.mean_queries.max(1.0)).collect();
        Some(numeric::loglog_slope(&xs, &ys))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,rows,success_rate,mean_queries,max_queries,mean_elapsed_ms\n");
        for p in &self.points {
            let a = &p.aggregate;
            let _ = writeln!(
                out,
                "{},{},{},{:.4},{:.1},{},{:.3}",
                p.n, p.k, a.rows, a.success_rate, a.mean_queries, a.max_queries, a.mean_elapsed_ms
            );
        }
        if let Some(s) = self.query_slope() {
            let _ = writeln!(out, "# slope={s:.4}");
        }
        out
    }
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    if config.points.is_empty() {
        return Err(Error::Config("bench needs at least one point".into()));
    }
    let mut points = Vec::with_capacity(config.points.len());
    for &(n, k) in &config.points {
        let mut c = config.base.clone();
        c.n = n;
        c.k = Some(k);
        c.output = None;
        let report = run_experiment(&c)?;
        log::info!("bench point n={n} k={k}: {}", report.aggregate().line());
        points.push(BenchPoint {
            n,
            k,
            aggregate: report.aggregate(),
        });
    }
    Ok(BenchReport { points })
}
