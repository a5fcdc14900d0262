// SPDX-License-Identifier: Apache-2.0

//! Ledger and plan files for offline audits.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::detection::RectanglePlan;
use crate::error::Result;
use crate::graph::{Commitment, QueryLedger, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitmentDump {
    pub digest: String,
    pub at_query: u64,
}

/// JSON form of a [`QueryLedger`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerDump {
    pub raw_count: u64,
    #[serde(default)]
    pub symmetric: bool,
    /// Distinct probed pairs; absent when recording was off.
    #[serde(default)]
    pub pairs: Option<Vec<(Vertex, Vertex)>>,
    #[serde(default)]
    pub commitment: Option<CommitmentDump>,
}

impl From<&QueryLedger> for LedgerDump {
    fn from(l: &QueryLedger) -> Self {
        Self {
            raw_count: l.raw_count(),
            symmetric: l.is_symmetric(),
            pairs: l.distinct_pairs(),
            commitment: l.commitment().map(|c| CommitmentDump {
                digest: c.digest.clone(),
                at_query: c.at_query,
            }),
        }
    }
}

impl From<LedgerDump> for QueryLedger {
    fn from(d: LedgerDump) -> Self {
        let commitment = d.commitment.map(|c| Commitment {
            digest: c.digest,
            at_query: c.at_query,
        });
        QueryLedger::restore(d.raw_count, d.symmetric, d.pairs, commitment)
    }
}

pub fn write_ledger(path: &Path, ledger: &QueryLedger) -> Result<()> {
    let text = serde_json::to_string(&LedgerDump::from(ledger))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn read_ledger(path: &Path) -> Result<QueryLedger> {
    let dump: LedgerDump = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    Ok(dump.into())
}

pub fn write_plan(path: &Path, plan: &RectanglePlan) -> Result<()> {
    std::fs::write(path, plan.to_string())?;
    Ok(())
}

pub fn read_plan(path: &Path) -> Result<RectanglePlan> {
    std::fs::read_to_string(path)?.parse()
}
