// SPDX-License-Identifier: Apache-2.0

use super::Vertex;

/// Fingerprint of a query plan registered with a ledger before querying.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commitment {
    /// Hex SHA-256 of the plan's canonical encoding.
    pub digest: String,
    /// `raw_count` at the moment the plan was registered.
    pub at_query: u64,
}

/// Counts adjacency queries; optionally records which pairs were probed.
///
/// Every probe is charged, duplicates included, so `raw_count` upper-bounds
/// the size of the probed entry set. With the symmetric convention enabled a
/// probe of `(u, v)` is charged as two entries, `(u, v)` and `(v, u)`.
/// Recording stores one normalized `(min, max)` pair per probe and is only
/// meant for audit runs.
#[derive(Clone, Debug, Default)]
pub struct QueryLedger {
    raw: u64,
    symmetric: bool,
    record: Option<Vec<(Vertex, Vertex)>>,
    commitment: Option<Commitment>,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// A ledger that also records every probed pair.
    pub fn recording() -> Self {
        Self {
            record: Some(Vec::new()),
            ..Self::default()
        }
    }

    /// Charge two entries per probe.
    pub fn with_symmetric_pairs(mut self, symmetric: bool) -> Self {
        self.symmetric = symmetric;
        self
    }

    /// Rebuilds a ledger from a dump.
    pub fn restore(
        raw_count: u64,
        symmetric: bool,
        pairs: Option<Vec<(Vertex, Vertex)>>,
        commitment: Option<Commitment>,
    ) -> Self {
        Self {
            raw: raw_count,
            symmetric,
            record: pairs.map(|p| p.into_iter().map(|(u, v)| normalize(u, v)).collect()),
            commitment,
        }
    }

    #[inline]
    pub(crate) fn charge(&mut self, u: Vertex, v: Vertex) {
        self.raw += if self.symmetric { 2 } else { 1 };
        if let Some(record) = &mut self.record {
            record.push(normalize(u, v));
        }
    }

    /// Charges `count` probes at once without recording them.
    ///
    /// Only valid when recording is off; used by bulk row scans.
    #[inline]
    pub(crate) fn charge_bulk(&mut self, count: u64) {
        debug_assert!(self.record.is_none());
        self.raw += if self.symmetric { 2 * count } else { count };
    }

    pub fn raw_count(&self) -> u64 {
        self.raw
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_recording(&self) -> bool {
        self.record.is_some()
    }

    /// Every probe in issue order, normalized to `(min, max)`.
    pub fn recorded_pairs(&self) -> Option<&[(Vertex, Vertex)]> {
        self.record.as_deref()
    }

    /// The set of distinct unordered pairs probed so far, sorted.
    pub fn distinct_pairs(&self) -> Option<Vec<(Vertex, Vertex)>> {
        self.record.as_ref().map(|r| {
            let mut pairs = r.clone();
            pairs.sort_unstable();
            pairs.dedup();
            pairs
        })
    }

    pub fn commitment(&self) -> Option<&Commitment> {
        self.commitment.as_ref()
    }

    pub(crate) fn commit(&mut self, digest: String) {
        self.commitment = Some(Commitment {
            digest,
            at_query: self.raw,
        });
    }
}

#[inline]
fn normalize(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}
