// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use super::outcome::RunMeter;
use super::{clique_completion, khdac, random_k, random_subset, FilterParams, KhdacParams, RecoveryOutcome, Tunables};
use crate::error::{invalid, Result};
use crate::graph::{count_neighbours, fork_rng, Graph, InducedView, QueryLedger, Vertex, VertexSet};
use crate::numeric;

/// Intermediate sets of one subsample-and-filter run.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterTrace {
    /// First-half vertices kept by the coin flips.
    pub sampled: VertexSet,
    /// Sampled vertices whose second-half degree fell inside the band.
    pub survivors: VertexSet,
    pub lower: f64,
    pub upper: f64,
    /// Inclusion probability after clamping.
    pub p_used: f64,
}

/// Subsample-and-filter. See [`subsample_filter_traced`].
pub fn subsample_filter<G, R>(
    g: &G,
    ledger: &mut QueryLedger,
    k: usize,
    p: f64,
    tunables: Tunables,
    rng: &mut R,
) -> Result<RecoveryOutcome>
where
    G: Graph + ?Sized,
    R: Rng + ?Sized,
{
    subsample_filter_traced(g, ledger, k, p, tunables, rng).map(|(out, _)| out)
}

/// Subsample-and-filter, also returning the sampled and surviving sets.
///
/// Ids `[0, n/2)` form the first half and `[n/2, n)` the second. Each
/// first-half vertex is kept with probability `p` (clamped to 1). If more
/// than `pn` are kept the run falls back to `k` random vertices. A kept
/// vertex survives when its degree into the second half lies in
/// `[(n+k)/4 - 2 sqrt(n), (n+k)/4 + 2 sqrt(n)]`. [`khdac`] then runs on the
/// survivors with one sample per survivor, and its output is completed on the
/// full graph. Every failure path returns the random fallback with
/// `DeclaredFailure`.
pub fn subsample_filter_traced<G, R>(
    g: &G,
    ledger: &mut QueryLedger,
    k: usize,
    p: f64,
    tunables: Tunables,
    rng: &mut R,
) -> Result<(RecoveryOutcome, FilterTrace)>
where
    G: Graph + ?Sized,
    R: Rng + ?Sized,
{
    tunables.validate()?;
    let n = g.order();
    if k == 0 || k > n {
        return Err(invalid(format!("clique size k = {k} must lie in [1, {n}]")));
    }
    let fp = FilterParams::new(n, k, p)?;
    let meter = RunMeter::start(ledger);
    let half = (n / 2) as Vertex;

    let mut coin_rng = fork_rng(rng);
    let sampled: VertexSet = if fp.p_sub >= 1.0 {
        VertexSet::range(half as usize)
    } else {
        (0..half).filter(|_| coin_rng.gen_bool(fp.p_sub)).collect()
    };
    let mut trace = FilterTrace {
        sampled,
        survivors: VertexSet::new(),
        lower: fp.lower,
        upper: fp.upper,
        p_used: fp.p_sub,
    };
    if trace.sampled.len() as f64 > fp.p_sub * n as f64 {
        return Ok((meter.failed(ledger, random_k(g, rng, k)), trace));
    }

    trace.survivors = trace
        .sampled
        .iter()
        .filter(|&v| {
            let d = count_neighbours(g, ledger, v, half..n as Vertex) as f64;
            fp.lower <= d && d <= fp.upper
        })
        .collect();

    let need = numeric::completion_size(n, tunables.c);
    if trace.survivors.is_empty() {
        return Ok((meter.failed(ledger, random_k(g, rng, k)), trace));
    }
    let view = InducedView::new(g, trace.survivors.as_slice().to_vec());
    let params = KhdacParams::new(view.order(), view.order(), tunables)?;
    let inner = khdac(&view, ledger, &params, rng)?;
    let found = view.lift(&inner.clique);
    if !inner.is_recovered() || found.len() < need {
        return Ok((meter.failed(ledger, random_k(g, rng, k)), trace));
    }

    let seed = random_subset(rng, &found, need);
    let completed = clique_completion(g, ledger, &seed, tunables.c, rng)?;
    if !completed.is_recovered() {
        return Ok((meter.failed(ledger, random_k(g, rng, k)), trace));
    }
    Ok((meter.recovered(ledger, completed.clique), trace))
}
