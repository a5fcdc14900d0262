// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Which random-graph distribution an instance is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InstanceKind {
    /// `G(n, 1/2)` with no planted structure.
    #[serde(rename = "er")]
    ErdosRenyi,
    /// A uniformly random `k`-subset is forced into a clique.
    #[serde(rename = "planted")]
    PlantedFixed,
    /// Each vertex joins the clique independently with probability `p_clique`.
    #[serde(rename = "iid")]
    PlantedIid,
}

impl InstanceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceKind::ErdosRenyi => "er",
            InstanceKind::PlantedFixed => "planted",
            InstanceKind::PlantedIid => "iid",
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "er" | "null" => Ok(InstanceKind::ErdosRenyi),
            "planted" | "fixed" => Ok(InstanceKind::PlantedFixed),
            "iid" => Ok(InstanceKind::PlantedIid),
            other => Err(invalid(format!("unknown instance kind `{other}`"))),
        }
    }
}

/// Reproducible description of one random instance.
///
/// Serializes either as JSON or as flat `key=value` lines:
///
/// ```text
/// kind=planted
/// n=4096
/// k=1774
/// seed=7
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_clique: Option<f64>,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn erdos_renyi(n: usize, seed: u64) -> Self {
        Self {
            kind: InstanceKind::ErdosRenyi,
            n,
            k: None,
            p_clique: None,
            seed,
        }
    }

    pub fn planted(n: usize, k: usize, seed: u64) -> Self {
        Self {
            kind: InstanceKind::PlantedFixed,
            n,
            k: Some(k),
            p_clique: None,
            seed,
        }
    }

    pub fn planted_iid(n: usize, p_clique: f64, seed: u64) -> Self {
        Self {
            kind: InstanceKind::PlantedIid,
            n,
            k: None,
            p_clique: Some(p_clique),
            seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("n must be positive"));
        }
        if self.n > u32::MAX as usize {
            return Err(invalid(format!("n = {} exceeds the 32-bit id space", self.n)));
        }
        match self.kind {
            InstanceKind::ErdosRenyi => {
                if self.k.is_some() || self.p_clique.is_some() {
                    return Err(invalid("an er instance takes neither k nor p_clique"));
                }
            }
            InstanceKind::PlantedFixed => {
                if self.p_clique.is_some() {
                    return Err(invalid("a planted instance takes k, not p_clique"));
                }
                match self.k {
                    None => return Err(invalid("a planted instance requires k")),
                    Some(k) if k > self.n => {
                        return Err(invalid(format!("k = {k} exceeds n = {}", self.n)))
                    }
                    Some(_) => {}
                }
            }
            InstanceKind::PlantedIid => {
                if self.k.is_some() {
                    return Err(invalid("an iid instance takes p_clique, not k"));
                }
                match self.p_clique {
                    None => return Err(invalid("an iid instance requires p_clique")),
                    Some(p) if !(0.0..=1.0).contains(&p) => {
                        return Err(invalid(format!("p_clique = {p} is outside [0, 1]")))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    /// The `key=value` form, one key per line.
    pub fn to_kv(&self) -> String {
        let mut out = format!("kind={}\nn={}\n", self.kind, self.n);
        if let Some(k) = self.k {
            out += &format!("k={k}\n");
        }
        if let Some(p) = self.p_clique {
            out += &format!("p_clique={p}\n");
        }
        out += &format!("seed={}\n", self.seed);
        out
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        let mut kind = None;
        let mut n = None;
        let mut k = None;
        let mut p_clique = None;
        let mut seed = None;
        for (key, value) in crate::harness::kv::pairs(text)? {
            match key {
                "kind" => kind = Some(value.parse()?),
                "n" => n = Some(crate::harness::kv::parse(key, value)?),
                "k" => k = Some(crate::harness::kv::parse(key, value)?),
                "p_clique" => p_clique = Some(crate::harness::kv::parse(key, value)?),
                "seed" => seed = Some(crate::harness::kv::parse(key, value)?),
                other => return Err(Error::Config(format!("unknown instance key `{other}`"))),
            }
        }
        let spec = Self {
            kind: kind.ok_or_else(|| Error::Config("missing `kind`".into()))?,
            n: n.ok_or_else(|| Error::Config("missing `n`".into()))?,
            k,
            p_clique,
            seed: seed.unwrap_or(0),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Parses JSON when the text starts with `{`, `key=value` otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let spec: Self = serde_json::from_str(text)?;
            spec.validate()?;
            Ok(spec)
        } else {
            Self::from_kv(text)
        }
    }
}
