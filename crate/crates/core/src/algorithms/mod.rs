// SPDX-License-Identifier: Apache-2.0

//! Planted clique recovery algorithms.
//!
//! All four share one shape: find a few vertices that are certainly in the
//! clique by looking at degrees, then grow them into the whole clique with
//! [`clique_completion`]. Every adjacency read is charged to the caller's
//! ledger, including reads made through induced sub-instances.

mod completion;
mod filter;
mod khdac;
mod outcome;
mod params;
mod subsample;

pub use completion::clique_completion;
pub use filter::{subsample_filter, subsample_filter_traced, FilterTrace};
pub use khdac::khdac;
pub use outcome::{RecoveryOutcome, RecoveryStatus};
pub use params::{FilterParams, KhdacParams, Tunables};
pub use subsample::subsample_khdac;

use rand::seq::index;
use rand::Rng;

use crate::graph::{Graph, Vertex, VertexSet};

/// Uniform `size`-subset of `set`; requires `size <= set.len()`.
pub(crate) fn random_subset<R: Rng + ?Sized>(rng: &mut R, set: &VertexSet, size: usize) -> VertexSet {
    debug_assert!(size <= set.len());
    let ids = set.as_slice();
    index::sample(rng, ids.len(), size)
        .into_iter()
        .map(|i| ids[i])
        .collect()
}

/// The "return k uniformly random vertices" fallback.
pub(crate) fn random_k<G: Graph + ?Sized, R: Rng + ?Sized>(g: &G, rng: &mut R, k: usize) -> VertexSet {
    let k = k.min(g.order());
    index::sample(rng, g.order(), k)
        .into_iter()
        .map(|v| v as Vertex)
        .collect()
}
