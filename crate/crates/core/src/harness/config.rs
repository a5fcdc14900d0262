// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::kv;
use crate::algorithms::Tunables;
use crate::error::{Error, Result};
use crate::graph::{InstanceKind, InstanceSpec};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "PCLIQUE_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmId {
    Khdac,
    SubsampleKhdac,
    SubsampleFilter,
    DetectKhd,
    DetectSubsampled,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 5] = [
        AlgorithmId::Khdac,
        AlgorithmId::SubsampleKhdac,
        AlgorithmId::SubsampleFilter,
        AlgorithmId::DetectKhd,
        AlgorithmId::DetectSubsampled,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::Khdac => "khdac",
            AlgorithmId::SubsampleKhdac => "subsample-khdac",
            AlgorithmId::SubsampleFilter => "subsample-filter",
            AlgorithmId::DetectKhd => "detect-khd",
            AlgorithmId::DetectSubsampled => "detect-subsampled",
        }
    }

    pub fn is_detection(self) -> bool {
        matches!(self, AlgorithmId::DetectKhd | AlgorithmId::DetectSubsampled)
    }

    fn takes_l_in(self) -> bool {
        matches!(self, AlgorithmId::Khdac | AlgorithmId::DetectKhd)
    }

    fn takes_p(self) -> bool {
        !self.takes_l_in()
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

/// One experiment: an algorithm, an instance template and a trial count.
///
/// Trial `t` uses seed `seed_base + t` for both the instance and the
/// algorithm's randomness. Detection experiments pair each planted instance
/// with a null instance of the same seed.
///
/// `k` is the clique size handed to the algorithm. For planted instances it
/// is also the planted size; for `er` it only parameterizes the algorithm;
/// for `iid` it defaults to `round(p_clique · n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algorithm: AlgorithmId,
    pub kind: InstanceKind,
    pub n: usize,
    pub k: Option<usize>,
    pub p_clique: Option<f64>,
    pub trials: usize,
    pub seed_base: u64,
    pub l_in: Option<usize>,
    pub p: Option<f64>,
    pub c: f64,
    pub threshold: Option<f64>,
    pub memoize: bool,
    /// Worker threads; 0 means `$PCLIQUE_THREADS` or the machine's core count.
    pub parallelism: usize,
    pub output: Option<PathBuf>,
    pub record_queries: bool,
    /// Run the rectangle audit on every detection run.
    pub audit: bool,
    pub dump_dir: Option<PathBuf>,
    /// Per-run query budget checked against each ledger.
    pub budget: Option<u64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            algorithm: AlgorithmId::Khdac,
            kind: InstanceKind::PlantedFixed,
            n: 0,
            k: None,
            p_clique: None,
            trials: 1,
            seed_base: 0,
            l_in: None,
            p: None,
            c: 1.0,
            threshold: None,
            memoize: false,
            parallelism: 0,
            output: None,
            record_queries: false,
            audit: false,
            dump_dir: None,
            budget: None,
        }
    }
}

fn conf(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl ExperimentConfig {
    pub fn new(algorithm: AlgorithmId, template: &InstanceSpec, trials: usize) -> Self {
        Self {
            algorithm,
            kind: template.kind,
            n: template.n,
            k: template.k,
            p_clique: template.p_clique,
            trials,
            seed_base: template.seed,
            ..Self::default()
        }
    }

    pub fn tunables(&self) -> Tunables {
        Tunables {
            c: self.c,
            memoize: self.memoize,
        }
    }

    pub fn seed(&self, trial: usize) -> u64 {
        self.seed_base.wrapping_add(trial as u64)
    }

    /// The instance of trial seed `seed`; for detection, the planted side.
    pub fn instance(&self, seed: u64) -> InstanceSpec {
        let k = if self.kind == InstanceKind::PlantedFixed { self.k } else { None };
        InstanceSpec {
            kind: self.kind,
            n: self.n,
            k,
            p_clique: self.p_clique,
            seed,
        }
    }

    /// Clique size given to the algorithm.
    pub fn clique_param(&self) -> Option<usize> {
        self.k.or_else(|| self.p_clique.map(|p| (p * self.n as f64).round() as usize))
    }

    pub fn threads(&self) -> usize {
        if self.parallelism > 0 {
            return self.parallelism;
        }
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .filter(|&t: &usize| t > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(conf("trials must be at least 1"));
        }
        self.instance(self.seed_base).validate()?;
        if self.algorithm.is_detection() && self.kind == InstanceKind::ErdosRenyi {
            return Err(conf("detection pairs null runs automatically; use a planted or iid kind"));
        }
        if self.l_in.is_some() && !self.algorithm.takes_l_in() {
            return Err(conf(format!("l_in does not apply to {}", self.algorithm)));
        }
        if self.p.is_some() && !self.algorithm.takes_p() {
            return Err(conf(format!("p does not apply to {}", self.algorithm)));
        }
        if self.threshold.is_some() && !self.algorithm.takes_l_in() {
            return Err(conf(format!("threshold does not apply to {}", self.algorithm)));
        }
        if self.l_in == Some(0) {
            return Err(conf("l_in must be at least 1"));
        }
        if let Some(p) = self.p {
            if !(p.is_finite() && p > 0.0) {
                return Err(conf(format!("p = {p} must be positive")));
            }
        }
        if let Some(t) = self.threshold {
            if !t.is_finite() {
                return Err(conf("threshold must be finite"));
            }
        }
        self.tunables().validate()?;
        let needs_k = self.algorithm.takes_p() || self.l_in.is_none();
        match self.clique_param() {
            None if needs_k => return Err(conf(format!("{} needs k", self.algorithm))),
            Some(k) if k > self.n => return Err(conf(format!("k = {k} exceeds n = {}", self.n))),
            Some(0) if self.algorithm.takes_p() => {
                return Err(conf(format!("{} needs k >= 1", self.algorithm)))
            }
            _ => {}
        }
        if self.audit && !self.record_queries {
            return Err(conf("audit needs record_queries"));
        }
        if self.dump_dir.is_some() && !self.record_queries {
            return Err(conf("dump_dir needs record_queries"));
        }
        Ok(())
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        let mut c = Self::default();
        let mut seen_n = false;
        for (key, value) in kv::pairs(text)? {
            match key {
                "algorithm" => c.algorithm = value.parse()?,
                "kind" => c.kind = value.parse()?,
                "n" => {
                    c.n = kv::parse(key, value)?;
                    seen_n = true;
                }
                "k" => c.k = Some(kv::parse(key, value)?),
                "p_clique" => c.p_clique = Some(kv::parse(key, value)?),
                "trials" => c.trials = kv::parse(key, value)?,
                "seed_base" | "seed" => c.seed_base = kv::parse(key, value)?,
                "l_in" => c.l_in = Some(kv::parse(key, value)?),
                "p" => c.p = Some(kv::parse(key, value)?),
                "c" => c.c = kv::parse(key, value)?,
                "threshold" => c.threshold = Some(kv::parse(key, value)?),
                "memoize" => c.memoize = kv::parse(key, value)?,
                "parallelism" => c.parallelism = kv::parse(key, value)?,
                "output" => c.output = Some(value.into()),
                "record_queries" => c.record_queries = kv::parse(key, value)?,
                "audit" => c.audit = kv::parse(key, value)?,
                "dump_dir" => c.dump_dir = Some(value.into()),
                "budget" => c.budget = Some(kv::parse(key, value)?),
                other => return Err(conf(format!("unknown config key `{other}`"))),
            }
        }
        if !seen_n {
            return Err(conf("missing `n`"));
        }
        Ok(c)
    }

    /// JSON when the text starts with `{`, `key=value` otherwise. The result
    /// is validated.
    pub fn parse(text: &str) -> Result<Self> {
        let c = if text.trim_start().starts_with('{') {
            serde_json::from_str(text)?
        } else {
            Self::from_kv(text)?
        };
        c.validate()?;
        Ok(c)
    }

    pub fn to_kv(&self) -> String {
        let mut out = format!(
            "algorithm={}\nkind={}\nn={}\ntrials={}\nseed_base={}\nc={}\nmemoize={}\n",
            self.algorithm, self.kind, self.n, self.trials, self.seed_base, self.c, self.memoize
        );
        let opt = |out: &mut String, key: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push_str(&format!("{key}={v}\n"));
            }
        };
        opt(&mut out, "k", self.k.map(|v| v.to_string()));
        opt(&mut out, "p_clique", self.p_clique.map(|v| v.to_string()));
        opt(&mut out, "l_in", self.l_in.map(|v| v.to_string()));
        opt(&mut out, "p", self.p.map(|v| v.to_string()));
        opt(&mut out, "threshold", self.threshold.map(|v| v.to_string()));
        opt(&mut out, "budget", self.budget.map(|v| v.to_string()));
        if self.parallelism > 0 {
            out.push_str(&format!("parallelism={}\n", self.parallelism));
        }
        opt(&mut out, "output", self.output.as_ref().map(|p| p.display().to_string()));
        if self.record_queries {
            out.push_str("record_queries=true\n");
        }
        if self.audit {
            out.push_str("audit=true\n");
        }
        opt(&mut out, "dump_dir", self.dump_dir.as_ref().map(|p| p.display().to_string()));
        out
    }
}
