// SPDX-License-Identifier: Apache-2.0

//! Non-adaptive rectangular detection.
//!
//! A [`RectanglePlan`] names two disjoint vertex sets `I` and `J`. The pairs
//! it allows are those inside `J` and those between `I` and `J`. A plan must
//! be sealed into a fresh ledger before any query is made; [`detect_khd`]
//! only accepts a [`SealedPlan`], so the query set cannot depend on answers.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::graph::{count_neighbours, fork_rng, sample_with, Graph, QueryLedger, SampleMode, Vertex, VertexSet};
use crate::numeric;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hypothesis {
    /// `G(n, 1/2)`.
    H0,
    /// `G(n, 1/2, k)`.
    H1,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::H0 => "H0",
            Hypothesis::H1 => "H1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectanglePlan {
    i: VertexSet,
    j: VertexSet,
}

impl RectanglePlan {
    pub fn new(i: VertexSet, j: VertexSet) -> Result<Self> {
        if !i.is_disjoint(&j) {
            return Err(invalid("rectangle sides I and J must be disjoint"));
        }
        Ok(Self { i, j })
    }

    /// `J` is the set of distinct vertices among `l` draws with replacement
    /// from `universe`; `I` is the rest of `universe`.
    pub fn sampled<R: Rng + ?Sized>(universe: &VertexSet, l: usize, rng: &mut R) -> Result<Self> {
        let mut sample_rng = fork_rng(rng);
        let ids = universe.as_slice();
        let picks = sample_with(&mut sample_rng, ids.len(), l, SampleMode::WithReplacement)?;
        let j: VertexSet = picks.into_iter().map(|x| ids[x as usize]).collect();
        let i = universe.difference(&j);
        Self::new(i, j)
    }

    /// The rectangle a subsample-then-KHDAC run would probe:
    /// a `⌈pn⌉` subsample, and `⌈4 n' (log n')^2 / k'⌉` degree candidates
    /// drawn from it with `k' = pk/2`.
    pub fn subsampled<R: Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Result<Self> {
        if k == 0 || k > n {
            return Err(invalid(format!("clique size k = {k} must lie in [1, {n}]")));
        }
        if !(p.is_finite() && p > 0.0) {
            return Err(invalid(format!("subsample fraction {p} must be positive")));
        }
        let p = p.min(1.0);
        let n_sub = numeric::ceil(p * n as f64).clamp(1, n);
        let universe = if n_sub == n {
            VertexSet::range(n)
        } else {
            let mut sub_rng = fork_rng(rng);
            sample_with(&mut sub_rng, n, n_sub, SampleMode::WithoutReplacement)?
                .into_iter()
                .collect()
        };
        let l = numeric::khdac_sample_size(n_sub, p * k as f64 / 2.0);
        Self::sampled(&universe, l, rng)
    }

    pub fn i(&self) -> &VertexSet {
        &self.i
    }

    pub fn j(&self) -> &VertexSet {
        &self.j
    }

    pub fn universe(&self) -> VertexSet {
        self.i.union(&self.j)
    }

    /// Whether the unordered pair `{u, v}` may be queried under this plan.
    pub fn contains_pair(&self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        let (ju, jv) = (self.j.contains(u), self.j.contains(v));
        (ju && jv) || (ju && self.i.contains(v)) || (jv && self.i.contains(u))
    }

    /// Per-id side: 0 outside, 1 in `I`, 2 in `J`.
    fn side_table(&self) -> Vec<u8> {
        let top = self.i.max().max(self.j.max()).map_or(0, |m| m as usize + 1);
        let mut side = vec![0u8; top];
        self.i.iter().for_each(|v| side[v as usize] = 1);
        self.j.iter().for_each(|v| side[v as usize] = 2);
        side
    }

    /// Number of unordered pairs the plan allows.
    pub fn pair_count(&self) -> u64 {
        let (i, j) = (self.i.len() as u64, self.j.len() as u64);
        j * j.saturating_sub(1) / 2 + i * j
    }

    /// Hex SHA-256 of the canonical text form.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_string().as_bytes()))
    }

    /// Registers this plan with `ledger`, which must not have been queried.
    pub fn seal(self, ledger: &mut QueryLedger) -> Result<SealedPlan> {
        if ledger.raw_count() != 0 {
            return Err(invalid(format!(
                "plan must be sealed before the first query; ledger already holds {}",
                ledger.raw_count()
            )));
        }
        let digest = self.digest();
        ledger.commit(digest.clone());
        Ok(SealedPlan { plan: self, digest })
    }
}

impl fmt::Display for RectanglePlan {
    /// `I=<ids>` and `J=<ids>` on separate lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "I={}", self.i)?;
        writeln!(f, "J={}", self.j)
    }
}

impl FromStr for RectanglePlan {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (mut i, mut j) = (None, None);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, ids) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("plan line `{line}` is not key=ids")))?;
            let ids = parse_ids(ids)?;
            let slot = match key.trim() {
                "I" => &mut i,
                "J" => &mut j,
                other => return Err(Error::Config(format!("unknown plan key `{other}`"))),
            };
            if slot.replace(ids).is_some() {
                return Err(Error::Config(format!("duplicate plan key `{key}`")));
            }
        }
        match (i, j) {
            (Some(i), Some(j)) => Self::new(i, j),
            _ => Err(Error::Config("plan needs both I= and J= lines".into())),
        }
    }
}

fn parse_ids(text: &str) -> Result<VertexSet> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(VertexSet::new());
    }
    let ids = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<Vertex>()
                .map_err(|e| Error::Config(format!("bad vertex id `{t}`: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    VertexSet::from_sorted(ids)
}

/// A plan whose digest has been committed to a ledger.
#[derive(Clone, Debug)]
pub struct SealedPlan {
    plan: RectanglePlan,
    digest: String,
}

impl SealedPlan {
    pub fn plan(&self) -> &RectanglePlan {
        &self.plan
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionOutcome {
    pub decision: Hypothesis,
    /// Largest degree into `I ∪ J` over `v ∈ J`; 0 when `J` is empty.
    pub max_degree_seen: usize,
    pub threshold: f64,
    pub queries: u64,
    pub plan: RectanglePlan,
}

/// Default threshold `m/2 + 2 sqrt(m log m)` for a universe of `m` vertices.
pub fn default_threshold(m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    numeric::degree_threshold(m)
}

/// Max-degree test over a sealed rectangle.
///
/// Every `v ∈ J` has its degree into `I ∪ J` computed in full, so exactly the
/// plan's pairs are probed (pairs inside `J` twice). Decides `H1` iff some
/// degree reaches `threshold`, which defaults to [`default_threshold`] of
/// `|I ∪ J|`.
pub fn detect_khd<G: Graph + ?Sized>(
    g: &G,
    ledger: &mut QueryLedger,
    sealed: &SealedPlan,
    threshold: Option<f64>,
) -> Result<DetectionOutcome> {
    match ledger.commitment() {
        Some(c) if c.digest == sealed.digest => {}
        _ => return Err(invalid("plan was not sealed into this ledger")),
    }
    let plan = &sealed.plan;
    let universe = plan.universe();
    universe.check_universe(g.order())?;
    let threshold = threshold.unwrap_or_else(|| default_threshold(universe.len()));
    let start = ledger.raw_count();

    let max_degree_seen = plan
        .j
        .iter()
        .map(|v| count_neighbours(g, ledger, v, universe.iter()))
        .max()
        .unwrap_or(0);
    let hit = !plan.j.is_empty() && max_degree_seen as f64 >= threshold;
    Ok(DetectionOutcome {
        decision: if hit { Hypothesis::H1 } else { Hypothesis::H0 },
        max_degree_seen,
        threshold,
        queries: ledger.raw_count() - start,
        plan: plan.clone(),
    })
}

/// Builds [`RectanglePlan::subsampled`], seals it into `ledger` and runs
/// [`detect_khd`] with the threshold of the subsample size.
pub fn detect_subsampled<G, R>(
    g: &G,
    ledger: &mut QueryLedger,
    k: usize,
    p: f64,
    rng: &mut R,
) -> Result<DetectionOutcome>
where
    G: Graph + ?Sized,
    R: Rng + ?Sized,
{
    let plan = RectanglePlan::subsampled(g.order(), k, p, rng)?;
    let sealed = plan.seal(ledger)?;
    detect_khd(g, ledger, &sealed, None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub passed: bool,
    /// Distinct recorded pairs outside the plan, sorted.
    pub offending: Vec<(Vertex, Vertex)>,
    /// The plan's digest was committed before any query, or nothing was
    /// queried at all.
    pub registered_before_first_query: bool,
}

fn allowed(side: &[u8], u: Vertex, v: Vertex) -> bool {
    let at = |x: Vertex| side.get(x as usize).copied().unwrap_or(0);
    let (a, b) = (at(u), at(v));
    u != v && a.max(b) == 2 && a.min(b) >= 1
}

/// Checks a recorded ledger against a plan.
pub fn rectangular_audit(ledger: &QueryLedger, plan: &RectanglePlan) -> Result<AuditReport> {
    let pairs = ledger.recorded_pairs().ok_or(Error::AuditUnavailable)?;
    let side = plan.side_table();
    let mut offending: Vec<_> = pairs
        .iter()
        .copied()
        .filter(|&(u, v)| !allowed(&side, u, v))
        .collect();
    offending.sort_unstable();
    offending.dedup();
    let registered = ledger.raw_count() == 0
        || ledger
            .commitment()
            .is_some_and(|c| c.at_query == 0 && c.digest == plan.digest());
    if !offending.is_empty() {
        let shown = &offending[..offending.len().min(8)];
        log::debug!("{} pairs outside the plan, first {:?}", offending.len(), shown);
    }
    Ok(AuditReport {
        passed: offending.is_empty() && registered,
        offending,
        registered_before_first_query: registered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{trial_rng, AdjacencyOracle, InstanceSpec};

    fn plan(i: &[Vertex], j: &[Vertex]) -> RectanglePlan {
        RectanglePlan::new(i.iter().copied().collect(), j.iter().copied().collect()).unwrap()
    }

    #[test]
    fn overlapping_sides_are_rejected() {
        assert!(RectanglePlan::new(VertexSet::range(3), VertexSet::from_unsorted(vec![2, 5])).is_err());
    }

    #[test]
    fn pair_membership() {
        let p = plan(&[0, 1], &[2, 3]);
        assert!(p.contains_pair(2, 3) && p.contains_pair(3, 2));
        assert!(p.contains_pair(0, 2) && p.contains_pair(3, 1));
        assert!(!p.contains_pair(0, 1));
        assert!(!p.contains_pair(2, 2));
        assert!(!p.contains_pair(0, 9));
        assert_eq!(p.pair_count(), 5);
    }

    #[test]
    fn text_round_trip_and_digest() {
        let p = plan(&[1, 4, 9], &[]);
        let back: RectanglePlan = p.to_string().parse().unwrap();
        assert_eq!(back, p);
        assert_eq!(back.digest(), p.digest());
        assert_ne!(p.digest(), plan(&[1, 4], &[9]).digest());
        assert!("I=1\n".parse::<RectanglePlan>().is_err());
        assert!("I=2,1\nJ=\n".parse::<RectanglePlan>().is_err());
    }

    #[test]
    fn empty_j_is_free_and_null() {
        let o = AdjacencyOracle::build(&InstanceSpec::planted(64, 64, 0)).unwrap();
        let mut l = QueryLedger::new();
        let sealed = plan(&[0, 1, 2], &[]).seal(&mut l).unwrap();
        let out = detect_khd(&o, &mut l, &sealed, None).unwrap();
        assert_eq!(out.decision, Hypothesis::H0);
        assert_eq!(out.queries, 0);
    }

    #[test]
    fn unsealed_or_late_sealed_plans_are_refused() {
        let o = AdjacencyOracle::build(&InstanceSpec::erdos_renyi(16, 0)).unwrap();
        let mut l = QueryLedger::new();
        let sealed = plan(&[0], &[1]).seal(&mut QueryLedger::new()).unwrap();
        assert!(detect_khd(&o, &mut l, &sealed, None).is_err());
        crate::graph::query(&o, &mut l, 0, 1).unwrap();
        assert!(plan(&[0], &[1]).seal(&mut l).is_err());
    }

    #[test]
    fn complete_graph_is_detected_and_audit_passes() {
        let n = 128;
        let o = AdjacencyOracle::build(&InstanceSpec::planted(n, n, 0)).unwrap();
        let j = VertexSet::range(14);
        let p = RectanglePlan::new(VertexSet::range(n).difference(&j), j).unwrap();
        let mut l = QueryLedger::recording();
        let sealed = p.clone().seal(&mut l).unwrap();
        let out = detect_khd(&o, &mut l, &sealed, None).unwrap();
        assert_eq!(out.decision, Hypothesis::H1);
        assert_eq!(out.max_degree_seen, n - 1);
        assert_eq!(l.distinct_pairs().unwrap().len() as u64, p.pair_count());
        assert!(rectangular_audit(&l, &p).unwrap().passed);
    }

    #[test]
    fn full_fraction_plan_matches_direct_sampling() {
        let (n, k) = (512, 200);
        let a = RectanglePlan::subsampled(n, k, 1.0, &mut trial_rng(3)).unwrap();
        let l = numeric::khdac_sample_size(n, k as f64 / 2.0);
        let b = RectanglePlan::sampled(&VertexSet::range(n), l, &mut trial_rng(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn audit_needs_recording() {
        let l = QueryLedger::new();
        assert!(matches!(
            rectangular_audit(&l, &plan(&[], &[])),
            Err(Error::AuditUnavailable)
        ));
        assert!(rectangular_audit(&QueryLedger::recording(), &plan(&[0], &[1])).unwrap().passed);
    }

    #[test]
    fn audit_flags_pairs_and_missing_commitment() {
        let o = AdjacencyOracle::build(&InstanceSpec::erdos_renyi(8, 0)).unwrap();
        let p = plan(&[0, 1], &[2]);
        let mut l = QueryLedger::recording();
        crate::graph::query(&o, &mut l, 0, 2).unwrap();
        let r = rectangular_audit(&l, &p).unwrap();
        assert!(r.offending.is_empty());
        assert!(!r.registered_before_first_query && !r.passed);
        crate::graph::query(&o, &mut l, 1, 0).unwrap();
        assert_eq!(rectangular_audit(&l, &p).unwrap().offending, vec![(0, 1)]);
    }
}
