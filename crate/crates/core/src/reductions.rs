// SPDX-License-Identifier: Apache-2.0

//! Prefix restriction, harness-only clique access and query budgets.

use crate::error::{invalid, Result};
use crate::graph::{Graph, HiddenClique, QueryLedger, Vertex};

/// The subgraph induced by ids `[0, m)` of a parent graph.
///
/// Ids are unchanged and the view holds no randomness of its own; probes go
/// through whatever ledger the caller passes, exactly as parent probes do.
#[derive(Clone, Copy, Debug)]
pub struct RestrictedView<'a, G: ?Sized> {
    parent: &'a G,
    m: usize,
}

pub fn restrict_prefix<G: Graph + ?Sized>(g: &G, m: usize) -> Result<RestrictedView<'_, G>> {
    if m == 0 || m > g.order() {
        return Err(invalid(format!(
            "prefix size {m} must lie in [1, {}]",
            g.order()
        )));
    }
    Ok(RestrictedView { parent: g, m })
}

impl<G: Graph + ?Sized> Graph for RestrictedView<'_, G> {
    fn order(&self) -> usize {
        self.m
    }

    #[inline]
    fn edge(&self, u: Vertex, v: Vertex) -> bool {
        debug_assert!((u as usize) < self.m && (v as usize) < self.m);
        self.parent.edge(u, v)
    }

    fn root_id(&self, v: Vertex) -> Vertex {
        self.parent.root_id(v)
    }
}

impl<G: HiddenClique + ?Sized> HiddenClique for RestrictedView<'_, G> {
    fn is_planted(&self, v: Vertex) -> bool {
        self.parent.is_planted(v)
    }
}

/// Size of the planted clique. Needs the harness capability, so algorithm
/// code holding only a [`Graph`] cannot call it.
pub fn realized_clique_size<G: HiddenClique + ?Sized>(g: &G) -> usize {
    g.hidden_clique().len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetVerdict {
    pub passed: bool,
    pub raw_count: u64,
    pub budget: u64,
}

/// Passes iff the ledger has charged at most `budget` probes.
pub fn query_budget_check(ledger: &QueryLedger, budget: u64) -> BudgetVerdict {
    BudgetVerdict {
        passed: ledger.raw_count() <= budget,
        raw_count: ledger.raw_count(),
        budget,
    }
}
