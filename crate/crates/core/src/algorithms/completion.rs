// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use super::outcome::RunMeter;
use super::{random_subset, RecoveryOutcome};
use crate::error::{invalid, Result};
use crate::graph::{adjacent_to_all, Graph, QueryLedger, Vertex, VertexSet};
use crate::numeric;

/// Grows a known clique subset `seed` into the full clique.
///
/// 1. Common neighbours: `S = seed ∪ {v : v adjacent to every seed vertex}`.
/// 2. Draw a uniformly random `⌈(1 + c) log n⌉`-subset `S'` of `S`. When `S`
///    is smaller than that the run ends in `DeclaredFailure`; since `S`
///    contains `seed` this only guards against a violated precondition.
/// 3. Return `S' ∪ {v ∈ S \ S' : v adjacent to every vertex of S'}`.
///
/// Step 1 may admit a few non-clique vertices when `seed` is adversarial;
/// step 3 re-filters against a random seed and removes them with high
/// probability. Each membership test stops at the first missing edge, so at
/// most `|seed|·n + |S'|·|S|` probes are made.
///
/// `seed` must hold at least `⌈(1 + c) log n⌉` vertices. It is meant to be a
/// subset of the planted clique; other inputs run but carry no guarantee.
pub fn clique_completion<G, R>(
    g: &G,
    ledger: &mut QueryLedger,
    seed: &VertexSet,
    c: f64,
    rng: &mut R,
) -> Result<RecoveryOutcome>
where
    G: Graph + ?Sized,
    R: Rng + ?Sized,
{
    if !(c.is_finite() && c > 0.0) {
        return Err(invalid(format!("c = {c} must be a positive constant")));
    }
    let n = g.order();
    seed.check_universe(n)?;
    let required = numeric::completion_size(n, c);
    if seed.len() < required {
        return Err(invalid(format!(
            "completion needs a seed set of at least {required} vertices, got {}",
            seed.len()
        )));
    }
    let meter = RunMeter::start(ledger);

    let mut common = seed.as_slice().to_vec();
    for v in 0..n as Vertex {
        if !seed.contains(v) && adjacent_to_all(g, ledger, v, seed) {
            common.push(v);
        }
    }
    let common = VertexSet::from_unsorted(common);

    if common.len() < required {
        return Ok(meter.failed(ledger, VertexSet::new()));
    }
    let reseed = random_subset(rng, &common, required);

    let mut out = reseed.as_slice().to_vec();
    out.extend(
        common
            .iter()
            .filter(|&v| !reseed.contains(v))
            .filter(|&v| adjacent_to_all(g, ledger, v, &reseed)),
    );
    Ok(meter.recovered(ledger, VertexSet::from_unsorted(out)))
}
