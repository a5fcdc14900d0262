// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;

use rand::Rng;

use super::outcome::RunMeter;
use super::{clique_completion, random_subset, KhdacParams, RecoveryOutcome};
use crate::error::Result;
use crate::graph::{count_neighbours, fork_rng, sample_with, Graph, QueryLedger, SampleMode, Vertex, VertexSet};

/// Keep-high-degree-and-complete.
///
/// Samples `l_in` vertices with replacement and computes each one's full
/// degree; vertices at or above `degree_threshold` are assumed to be clique
/// vertices. If fewer than `completion_subset_size` distinct vertices pass,
/// the run declares failure. Otherwise a uniformly random subset of that size
/// seeds [`clique_completion`].
///
/// Sampling and the later random choices draw from separate streams forked
/// off `rng`, so raising `l_in` extends the sample without changing its
/// prefix.
///
/// Cost: at most `l_in·(n - 1)` probes for the degree phase plus the
/// completion cost.
pub fn khdac<G, R>(
    g: &G,
    ledger: &mut QueryLedger,
    params: &KhdacParams,
    rng: &mut R,
) -> Result<RecoveryOutcome>
where
    G: Graph + ?Sized,
    R: Rng + ?Sized,
{
    params.tunables.validate()?;
    let n = g.order();
    let meter = RunMeter::start(ledger);
    let mut sample_rng = fork_rng(rng);
    let mut pick_rng = fork_rng(rng);

    let samples = sample_with(&mut sample_rng, n, params.l_in, SampleMode::WithReplacement)?;
    let mut seen: HashMap<Vertex, bool> = HashMap::new();
    let mut high = Vec::new();
    for v in samples {
        let keep = match seen.get(&v) {
            Some(&keep) if params.tunables.memoize => keep,
            _ => {
                let d = count_neighbours(g, ledger, v, 0..n as Vertex);
                let keep = d as f64 >= params.degree_threshold;
                seen.insert(v, keep);
                keep
            }
        };
        if keep {
            high.push(v);
        }
    }
    let high = VertexSet::from_unsorted(high);

    if high.len() < params.completion_subset_size {
        return Ok(meter.failed(ledger, VertexSet::new()));
    }
    let seed = random_subset(&mut pick_rng, &high, params.completion_subset_size);
    let completed = clique_completion(g, ledger, &seed, params.tunables.c, &mut pick_rng)?;
    Ok(meter.finish(ledger, completed.status, completed.clique))
}
