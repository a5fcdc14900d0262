// SPDX-License-Identifier: Apache-2.0

//! Exhaustive ground truth for graphs of at most 32 vertices.

use crate::error::{Error, Result};
use crate::graph::{probe, Graph, QueryLedger, Vertex, VertexSet};

pub const DENSE_LIMIT: usize = 32;

/// Adjacency matrix with one `u32` bitset row per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    rows: Vec<u32>,
}

impl DenseGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > DENSE_LIMIT {
            return Err(Error::TooLarge { n, limit: DENSE_LIMIT });
        }
        Ok(Self { n, rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.set_edge(u, v)?;
        }
        Ok(g)
    }

    fn set_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        for w in [u, v] {
            if w as usize >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w as u64, n: self.n });
            }
        }
        if u != v {
            self.rows[u as usize] |= 1 << v;
            self.rows[v as usize] |= 1 << u;
        }
        Ok(())
    }

    pub fn row(&self, v: Vertex) -> u32 {
        self.rows[v as usize]
    }

    pub fn row_sum(&self, v: Vertex) -> usize {
        self.rows[v as usize].count_ones() as usize
    }
}

impl Graph for DenseGraph {
    fn order(&self) -> usize {
        self.n
    }

    fn edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u as usize] >> v & 1 == 1
    }
}

/// Copies `g` by probing each of its `n(n-1)/2` pairs once.
pub fn materialize<G: Graph + ?Sized>(g: &G, ledger: &mut QueryLedger) -> Result<DenseGraph> {
    let mut out = DenseGraph::empty(g.order())?;
    for u in 0..g.order() as Vertex {
        for v in u + 1..g.order() as Vertex {
            if probe(g, ledger, u, v) {
                out.set_edge(u, v)?;
            }
        }
    }
    Ok(out)
}

fn bits(set: u32) -> impl Iterator<Item = Vertex> {
    let mut s = set;
    std::iter::from_fn(move || {
        (s != 0).then(|| {
            let v = s.trailing_zeros();
            s &= s - 1;
            v
        })
    })
}

fn to_set(set: u32) -> VertexSet {
    bits(set).collect()
}

/// Upper bound on the clique number of `cand` from a greedy colouring.
fn colour_bound(g: &DenseGraph, cand: u32) -> usize {
    let (mut left, mut colours) = (cand, 0);
    while left != 0 {
        colours += 1;
        let mut open = left;
        while open != 0 {
            let v = open.trailing_zeros();
            open &= !g.rows[v as usize] & !(1 << v);
            left &= !(1 << v);
        }
    }
    colours
}

/// Ids strictly above `v`.
fn above(v: Vertex) -> u32 {
    if v >= 31 {
        0
    } else {
        !0u32 << (v + 1)
    }
}

struct Search<'a> {
    g: &'a DenseGraph,
    best: usize,
    best_set: u32,
    /// When set, collect every clique of exactly this size.
    target: Option<usize>,
    found: Vec<u32>,
}

impl Search<'_> {
    /// Depth-first over cliques extended in increasing id order, so cliques
    /// are visited in lexicographic order of their sorted id lists.
    fn expand(&mut self, cur: u32, size: usize, cand: u32) {
        if let Some(t) = self.target {
            if size == t {
                self.found.push(cur);
                return;
            }
        } else if size > self.best {
            self.best = size;
            self.best_set = cur;
        }
        if cand == 0 {
            return;
        }
        let need = self.target.map_or(self.best + 1, |t| t);
        if size + colour_bound(self.g, cand) < need {
            return;
        }
        for v in bits(cand) {
            let rest = cand & above(v);
            let need = self.target.map_or(self.best + 1, |t| t);
            if size + 1 + (rest.count_ones() as usize) < need {
                break;
            }
            self.expand(cur | 1 << v, size + 1, rest & self.g.rows[v as usize]);
        }
    }
}

fn all_vertices(n: usize) -> u32 {
    if n == 32 {
        !0
    } else {
        (1u32 << n) - 1
    }
}

/// A maximum clique; among several, the lexicographically smallest sorted
/// id list.
pub fn max_clique_exact(g: &DenseGraph) -> VertexSet {
    let mut s = Search { g, best: 0, best_set: 0, target: None, found: Vec::new() };
    s.expand(0, 0, all_vertices(g.n));
    to_set(s.best_set)
}

/// Every maximum clique, in lexicographic order.
pub fn all_maximum_cliques(g: &DenseGraph) -> Vec<VertexSet> {
    let omega = max_clique_exact(g).len();
    let mut s = Search { g, best: 0, best_set: 0, target: Some(omega), found: Vec::new() };
    s.expand(0, 0, all_vertices(g.n));
    s.found.into_iter().map(to_set).collect()
}

/// True iff every pair of `set` is adjacent. Always probes all
/// `|set|(|set|-1)/2` pairs.
pub fn verify_clique<G: Graph + ?Sized>(g: &G, ledger: &mut QueryLedger, set: &VertexSet) -> Result<bool> {
    set.check_universe(g.order())?;
    let ids = set.as_slice();
    let mut all = true;
    for (a, &u) in ids.iter().enumerate() {
        for &v in &ids[a + 1..] {
            all &= probe(g, ledger, u, v);
        }
    }
    Ok(all)
}
