// SPDX-License-Identifier: Apache-2.0

//! Lazy random-graph instances, the query ledger and vertex-set primitives.

mod ledger;
mod oracle;
mod sampling;
mod spec;
mod vertex_set;
mod view;

use std::ops::Range;

pub use ledger::{Commitment, QueryLedger};
pub use oracle::AdjacencyOracle;
pub use sampling::{fork_rng, sample_vertices, sample_with, trial_rng, SampleMode, TrialRng};
pub use spec::{InstanceKind, InstanceSpec};
pub use vertex_set::VertexSet;
pub use view::InducedView;

use crate::error::{Error, Result};

/// Dense vertex identifier in `[0, n)`.
pub type Vertex = u32;

/// Read access to an adjacency matrix.
///
/// `edge` is an uncharged read used by the query helpers below; algorithm code
/// goes through [`query`], [`degree`] and [`degree_over`] so every probe lands
/// in a [`QueryLedger`]. The trait deliberately has no way to reveal a planted
/// clique.
pub trait Graph: Sync {
    fn order(&self) -> usize;

    /// Adjacency bit for `u, v < order()`; `false` on the diagonal.
    fn edge(&self, u: Vertex, v: Vertex) -> bool;

    /// Id of `v` in the outermost graph, used when recording probes.
    fn root_id(&self, v: Vertex) -> Vertex {
        v
    }
}

/// Harness-side capability: knowledge of the planted clique.
pub trait HiddenClique: Graph {
    fn is_planted(&self, v: Vertex) -> bool;

    fn hidden_clique(&self) -> VertexSet {
        (0..self.order() as Vertex)
            .filter(|&v| self.is_planted(v))
            .collect()
    }
}

impl<G: Graph + ?Sized> Graph for &G {
    fn order(&self) -> usize {
        (**self).order()
    }

    fn edge(&self, u: Vertex, v: Vertex) -> bool {
        (**self).edge(u, v)
    }

    fn root_id(&self, v: Vertex) -> Vertex {
        (**self).root_id(v)
    }
}

impl<G: HiddenClique + ?Sized> HiddenClique for &G {
    fn is_planted(&self, v: Vertex) -> bool {
        (**self).is_planted(v)
    }

    fn hidden_clique(&self) -> VertexSet {
        (**self).hidden_clique()
    }
}

#[inline]
fn check_vertex(n: usize, v: Vertex) -> Result<()> {
    if (v as usize) < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange {
            vertex: v as u64,
            n,
        })
    }
}

/// One charged adjacency probe.
pub fn query<G: Graph + ?Sized>(
    g: &G,
    ledger: &mut QueryLedger,
    u: Vertex,
    v: Vertex,
) -> Result<bool> {
    let n = g.order();
    check_vertex(n, u)?;
    check_vertex(n, v)?;
    Ok(probe(g, ledger, u, v))
}

/// Charged probe without range checks, for ids already validated.
#[inline]
pub(crate) fn probe<G: Graph + ?Sized>(
    g: &G,
    ledger: &mut QueryLedger,
    u: Vertex,
    v: Vertex,
) -> bool {
    debug_assert!((u as usize) < g.order() && (v as usize) < g.order());
    if ledger.is_recording() {
        ledger.charge(g.root_id(u), g.root_id(v));
    } else {
        ledger.charge_bulk(1);
    }
    g.edge(u, v)
}

/// Number of neighbours of `v` inside `among`, skipping `v` itself.
///
/// Issues exactly `|among \ {v}|` probes.
pub fn degree<G: Graph + ?Sized>(
    g: &G,
    ledger: &mut QueryLedger,
    v: Vertex,
    among: &VertexSet,
) -> Result<usize> {
    let n = g.order();
    check_vertex(n, v)?;
    among.check_universe(n)?;
    Ok(count_neighbours(g, ledger, v, among.iter()))
}

/// Number of neighbours of `v` with ids in `range`, skipping `v` itself.
pub fn degree_over<G: Graph + ?Sized>(
    g: &G,
    ledger: &mut QueryLedger,
    v: Vertex,
    range: Range<Vertex>,
) -> Result<usize> {
    let n = g.order();
    check_vertex(n, v)?;
    if range.end as usize > n {
        return Err(Error::VertexOutOfRange {
            vertex: range.end as u64 - 1,
            n,
        });
    }
    Ok(count_neighbours(g, ledger, v, range))
}

#[inline]
pub(crate) fn count_neighbours<G, I>(g: &G, ledger: &mut QueryLedger, v: Vertex, among: I) -> usize
where
    G: Graph + ?Sized,
    I: Iterator<Item = Vertex>,
{
    let others = among.filter(|&u| u != v);
    if ledger.is_recording() {
        others.filter(|&u| probe(g, ledger, v, u)).count()
    } else {
        let (mut probes, mut hits) = (0u64, 0usize);
        for u in others {
            probes += 1;
            hits += g.edge(v, u) as usize;
        }
        ledger.charge_bulk(probes);
        hits
    }
}

/// True iff `v` is adjacent to every member of `set` (other than itself),
/// stopping at the first non-neighbour.
#[inline]
pub(crate) fn adjacent_to_all<G: Graph + ?Sized>(
    g: &G,
    ledger: &mut QueryLedger,
    v: Vertex,
    set: &VertexSet,
) -> bool {
    set.iter().filter(|&u| u != v).all(|u| probe(g, ledger, v, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle-free adjacency matrix for cross-checking.
    struct Matrix(Vec<Vec<bool>>);

    impl Graph for Matrix {
        fn order(&self) -> usize {
            self.0.len()
        }
        fn edge(&self, u: Vertex, v: Vertex) -> bool {
            self.0[u as usize][v as usize]
        }
    }

    #[test]
    fn diagonal_query_is_zero() {
        let o = AdjacencyOracle::build(&InstanceSpec::erdos_renyi(10, 1)).unwrap();
        let mut l = QueryLedger::new();
        assert!(!query(&o, &mut l, 5, 5).unwrap());
        assert_eq!(l.raw_count(), 1);
    }

    #[test]
    fn repeated_query_is_stable_and_charged_twice() {
        let o = AdjacencyOracle::build(&InstanceSpec::erdos_renyi(10, 1)).unwrap();
        let mut l = QueryLedger::new();
        let a = query(&o, &mut l, 2, 7).unwrap();
        let b = query(&o, &mut l, 2, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(l.raw_count(), 2);
    }

    #[test]
    fn planted_pair_is_forced() {
        let o = AdjacencyOracle::build(&InstanceSpec::planted(10, 3, 9)).unwrap();
        let k = o.hidden_clique();
        let mut l = QueryLedger::new();
        let ids: Vec<_> = k.iter().collect();
        assert!(query(&o, &mut l, ids[1], ids[2]).unwrap());
        assert!(query(&o, &mut l, ids[2], ids[0]).unwrap());
    }

    #[test]
    fn out_of_range_query_is_rejected() {
        let o = AdjacencyOracle::build(&InstanceSpec::erdos_renyi(10, 1)).unwrap();
        let mut l = QueryLedger::new();
        assert!(matches!(
            query(&o, &mut l, 10, 0),
            Err(Error::VertexOutOfRange { vertex: 10, n: 10 })
        ));
        assert!(degree_over(&o, &mut l, 0, 0..11).is_err());
        assert!(degree(&o, &mut l, 0, &VertexSet::from(vec![3, 12])).is_err());
        assert_eq!(l.raw_count(), 0);
    }

    #[test]
    fn degree_of_empty_set_is_free() {
        let o = AdjacencyOracle::build(&InstanceSpec::erdos_renyi(10, 1)).unwrap();
        let mut l = QueryLedger::new();
        assert_eq!(degree(&o, &mut l, 3, &VertexSet::new()).unwrap(), 0);
        assert_eq!(l.raw_count(), 0);
    }

    #[test]
    fn degree_in_complete_graph() {
        let o = AdjacencyOracle::build(&InstanceSpec::planted(40, 40, 2)).unwrap();
        let mut l = QueryLedger::new();
        assert_eq!(degree(&o, &mut l, 7, &VertexSet::range(40)).unwrap(), 39);
        assert_eq!(l.raw_count(), 39);
    }

    #[test]
    fn degree_matches_materialized_row_sums() {
        // Materialize 24x24 by exhaustive uncharged reads, then compare.
        let o = AdjacencyOracle::build(&InstanceSpec::planted(24, 6, 77)).unwrap();
        let m = Matrix(
            (0..24)
                .map(|u| (0..24).map(|v| o.edge(u, v)).collect())
                .collect(),
        );
        let all = VertexSet::range(24);
        for v in 0..24u32 {
            let row_sum = m.0[v as usize].iter().filter(|&&b| b).count();
            let mut l = QueryLedger::new();
            assert_eq!(degree(&o, &mut l, v, &all).unwrap(), row_sum);
            assert_eq!(l.raw_count(), 23);
            let mut recorded = QueryLedger::recording();
            assert_eq!(degree_over(&m, &mut recorded, v, 0..24).unwrap(), row_sum);
            assert_eq!(recorded.raw_count(), 23);
        }
    }

    #[test]
    fn adjacent_to_all_short_circuits() {
        let m = Matrix(vec![
            vec![false, false, true],
            vec![false, false, true],
            vec![true, true, false],
        ]);
        let mut l = QueryLedger::new();
        assert!(!adjacent_to_all(&m, &mut l, 0, &VertexSet::from(vec![1, 2])));
        assert_eq!(l.raw_count(), 1);
        assert!(adjacent_to_all(&m, &mut l, 2, &VertexSet::from(vec![0, 1, 2])));
        assert_eq!(l.raw_count(), 3);
    }
}
