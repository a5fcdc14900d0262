// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use super::outcome::RunMeter;
use super::{clique_completion, khdac, random_k, random_subset, KhdacParams, RecoveryOutcome, Tunables};
use crate::error::{invalid, Result};
use crate::graph::{fork_rng, sample_with, Graph, InducedView, QueryLedger, SampleMode};
use crate::numeric;

/// Subsample-then-KHDAC.
///
/// Draws `n' = ⌈pn⌉` vertices without replacement, runs [`khdac`] on the
/// induced sub-instance as if it held a clique of size `k' = pk/2` with
/// `⌈4 n' (log n')^2 / k'⌉` samples, then completes a `⌈(1 + c) log n⌉`
/// subset of the result on the full graph. If the sub-run returns too few
/// vertices, `k` uniformly random vertices come back with `DeclaredFailure`.
///
/// `p` above 1 is clamped. Values in `(1/2, 1)` run but sit outside the
/// regime the sample count was derived for, so a warning is logged.
///
/// With `n' = n` no vertices are drawn and the sub-instance is the identity,
/// so the inner run sees exactly the stream a direct [`khdac`] call would.
pub fn subsample_khdac<G, R>(
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
    tunables.validate()?;
    let n = g.order();
    if k == 0 || k > n {
        return Err(invalid(format!("clique size k = {k} must lie in [1, {n}]")));
    }
    if !(p.is_finite() && p > 0.0) {
        return Err(invalid(format!("subsample fraction {p} must be positive")));
    }
    if p > 0.5 && p < 1.0 {
        log::warn!("subsample fraction {p} exceeds 1/2");
    }
    let p = p.min(1.0);
    let meter = RunMeter::start(ledger);

    let n_sub = numeric::ceil(p * n as f64).clamp(1, n);
    let view = if n_sub == n {
        InducedView::identity(g)
    } else {
        let mut sub_rng = fork_rng(rng);
        let mut picked = sample_with(&mut sub_rng, n, n_sub, SampleMode::WithoutReplacement)?;
        picked.sort_unstable();
        InducedView::new(g, picked)
    };

    let k_sub = p * k as f64 / 2.0;
    let params = KhdacParams::for_clique_size(n_sub, k_sub, tunables)?;
    let inner = khdac(&view, ledger, &params, rng)?;
    let found = view.lift(&inner.clique);

    let need = numeric::completion_size(n, tunables.c);
    if !inner.is_recovered() || found.len() < need {
        return Ok(meter.failed(ledger, random_k(g, rng, k)));
    }
    let seed = random_subset(rng, &found, need);
    let completed = clique_completion(g, ledger, &seed, tunables.c, rng)?;
    if !completed.is_recovered() {
        return Ok(meter.failed(ledger, random_k(g, rng, k)));
    }
    Ok(meter.recovered(ledger, completed.clique))
}
