// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::graph::{QueryLedger, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecoveryStatus {
    Recovered,
    DeclaredFailure,
}

impl fmt::Display for RecoveryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecoveryStatus::Recovered => "recovered",
            RecoveryStatus::DeclaredFailure => "declared-failure",
        })
    }
}

/// Result of one recovery run.
///
/// On `DeclaredFailure`, `clique` is either empty or the random fallback set
/// some algorithms return instead of giving up.
#[derive(Clone, Debug, PartialEq)]
pub struct RecoveryOutcome {
    pub status: RecoveryStatus,
    pub clique: VertexSet,
    /// Ledger charges made by this run, nested subroutine runs included.
    pub queries: u64,
    pub elapsed: Duration,
}

impl RecoveryOutcome {
    pub fn is_recovered(&self) -> bool {
        self.status == RecoveryStatus::Recovered
    }
}

/// Captures the ledger count and clock at the start of a run.
pub(crate) struct RunMeter {
    start_queries: u64,
    started: Instant,
}

impl RunMeter {
    pub(crate) fn start(ledger: &QueryLedger) -> Self {
        Self {
            start_queries: ledger.raw_count(),
            started: Instant::now(),
        }
    }

    pub(crate) fn finish(
        self,
        ledger: &QueryLedger,
        status: RecoveryStatus,
        clique: VertexSet,
    ) -> RecoveryOutcome {
        debug_assert!(status == RecoveryStatus::DeclaredFailure || !clique.is_empty());
        RecoveryOutcome {
            status,
            clique,
            queries: ledger.raw_count() - self.start_queries,
            elapsed: self.started.elapsed(),
        }
    }

    pub(crate) fn recovered(self, ledger: &QueryLedger, clique: VertexSet) -> RecoveryOutcome {
        self.finish(ledger, RecoveryStatus::Recovered, clique)
    }

    pub(crate) fn failed(self, ledger: &QueryLedger, fallback: VertexSet) -> RecoveryOutcome {
        self.finish(ledger, RecoveryStatus::DeclaredFailure, fallback)
    }
}
