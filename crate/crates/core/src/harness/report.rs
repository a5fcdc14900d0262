// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::path::Path;

use super::config::ExperimentConfig;
use crate::detection::Hypothesis;
use crate::error::Result;

pub const CSV_HEADER: &str = "trial,seed,algorithm,n,k,p,status,exact_match,raw_queries,elapsed_ms";

/// One run. Detection trials produce two rows, one per hypothesis.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub algorithm: String,
    pub n: usize,
    /// Realized clique size of the instance (0 for null instances).
    pub k: usize,
    pub p: Option<f64>,
    /// `recovered`, `declared-failure`, `H0`, `H1` or `error`.
    pub status: String,
    /// Recovery: output equals the hidden clique. Detection: decision equals
    /// the true hypothesis.
    pub exact_match: bool,
    pub raw_queries: u64,
    pub elapsed_ms: f64,
    /// Independent pairwise check of a recovered set.
    pub verified: Option<bool>,
    pub truth: Option<Hypothesis>,
    pub audit_passed: Option<bool>,
    pub budget_passed: Option<bool>,
    pub error: Option<String>,
}

impl TrialRow {
    pub fn is_success(&self) -> bool {
        match self.truth {
            Some(_) => self.exact_match,
            None => self.status == "recovered" && self.exact_match,
        }
    }

    pub fn is_error(&self) -> bool {
        self.status == "error"
    }

    pub fn csv_line(&self) -> String {
        let p = self.p.map(|p| p.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{:.3}",
            self.trial,
            self.seed,
            self.algorithm,
            self.n,
            self.k,
            p,
            self.status,
            self.exact_match,
            self.raw_queries,
            self.elapsed_ms
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub rows: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub mean_queries: f64,
    pub max_queries: u64,
    pub total_queries: u64,
    pub mean_elapsed_ms: f64,
    pub errors: usize,
    pub declared_failures: usize,
    /// Recovered rows whose set failed the pairwise check.
    pub unverified: usize,
    pub h0_accuracy: Option<f64>,
    pub h1_accuracy: Option<f64>,
    pub audits: Option<(usize, usize)>,
    pub budgets: Option<(usize, usize)>,
}

impl Aggregate {
    fn of(rows: &[TrialRow]) -> Self {
        let m = rows.len().max(1) as f64;
        let successes = rows.iter().filter(|r| r.is_success()).count();
        let accuracy = |h: Hypothesis| {
            let of_h: Vec<_> = rows.iter().filter(|r| r.truth == Some(h)).collect();
            (!of_h.is_empty())
                .then(|| of_h.iter().filter(|r| r.exact_match).count() as f64 / of_h.len() as f64)
        };
        let tally = |f: fn(&TrialRow) -> Option<bool>| {
            let seen: Vec<bool> = rows.iter().filter_map(f).collect();
            (!seen.is_empty()).then(|| (seen.iter().filter(|&&b| b).count(), seen.len()))
        };
        Self {
            rows: rows.len(),
            successes,
            success_rate: successes as f64 / m,
            mean_queries: rows.iter().map(|r| r.raw_queries as f64).sum::<f64>() / m,
            max_queries: rows.iter().map(|r| r.raw_queries).max().unwrap_or(0),
            total_queries: rows.iter().map(|r| r.raw_queries).sum(),
            mean_elapsed_ms: rows.iter().map(|r| r.elapsed_ms).sum::<f64>() / m,
            errors: rows.iter().filter(|r| r.is_error()).count(),
            declared_failures: rows.iter().filter(|r| r.status == "declared-failure").count(),
            unverified: rows.iter().filter(|r| r.verified == Some(false)).count(),
            h0_accuracy: accuracy(Hypothesis::H0),
            h1_accuracy: accuracy(Hypothesis::H1),
            audits: tally(|r| r.audit_passed),
            budgets: tally(|r| r.budget_passed),
        }
    }

    /// `correct-on-H0 + correct-on-H1`, when both hypotheses were run.
    pub fn sum_statistic(&self) -> Option<f64> {
        Some(self.h0_accuracy? + self.h1_accuracy?)
    }

    /// The trailing `# aggregate` line. Timing comes last.
    pub fn line(&self) -> String {
        let mut s = format!(
            "# aggregate rows={} successes={} success_rate={:.4} mean_queries={:.1} max_queries={} \
             total_queries={} errors={} declared_failures={} unverified={}",
            self.rows,
            self.successes,
            self.success_rate,
            self.mean_queries,
            self.max_queries,
            self.total_queries,
            self.errors,
            self.declared_failures,
            self.unverified
        );
        if let (Some(a), Some(b)) = (self.h0_accuracy, self.h1_accuracy) {
            let _ = write!(s, " h0_accuracy={a:.4} h1_accuracy={b:.4} sum_statistic={:.4}", a + b);
        }
        if let Some((ok, of)) = self.audits {
            let _ = write!(s, " audits_passed={ok}/{of}");
        }
        if let Some((ok, of)) = self.budgets {
            let _ = write!(s, " budgets_passed={ok}/{of}");
        }
        let _ = write!(s, " mean_elapsed_ms={:.3}", self.mean_elapsed_ms);
        s
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<TrialRow>,
    /// Process-level counter summed across workers.
    pub total_queries: u64,
}

impl ExperimentReport {
    pub fn aggregate(&self) -> Aggregate {
        Aggregate::of(&self.rows)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 2));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.csv_line());
            out.push('\n');
        }
        out.push_str(&self.aggregate().line());
        out.push('\n');
        out
    }

    /// Writes the CSV to a sibling temp file and renames it into place.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("csv.partial");
        std::fs::write(&tmp, self.to_csv())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}
