// SPDX-License-Identifier: Apache-2.0

use std::sync::OnceLock;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Graph, HiddenClique, InstanceKind, InstanceSpec, Vertex, VertexSet};
use crate::error::Result;

const EDGE_SALT: u64 = 0x6a09_e667_f3bc_c908;
const EDGE_SALT_2: u64 = 0xbb67_ae85_84ca_a73b;
const CLIQUE_SALT: u64 = 0x3c6e_f372_fe94_f82b;
const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function.
#[inline]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Keyed pseudorandom function of an unordered vertex pair.
#[derive(Clone, Copy, Debug)]
struct EdgeFn {
    key: u64,
    key2: u64,
}

impl EdgeFn {
    fn new(seed: u64) -> Self {
        Self {
            key: mix64(seed ^ EDGE_SALT),
            key2: mix64(seed.wrapping_add(EDGE_SALT_2)),
        }
    }

    #[inline]
    fn bit(self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let x = ((a as u64) << 32) | b as u64;
        let h = mix64(mix64((x ^ self.key).wrapping_mul(GOLDEN)) ^ self.key2);
        h >> 63 == 1
    }
}

enum Membership {
    Empty,
    Fixed {
        ids: VertexSet,
        bits: Vec<u64>,
    },
    Iid {
        key: u64,
        /// Inclusion iff `hash < cutoff`, with `cutoff = p * 2^64`.
        cutoff: u128,
        ids: OnceLock<VertexSet>,
    },
}

impl Membership {
    #[inline]
    fn contains(&self, v: Vertex) -> bool {
        match self {
            Membership::Empty => false,
            Membership::Fixed { bits, .. } => bits[(v >> 6) as usize] >> (v & 63) & 1 == 1,
            Membership::Iid { key, cutoff, .. } => iid_member(*key, *cutoff, v),
        }
    }
}

#[inline]
fn iid_member(key: u64, cutoff: u128, v: Vertex) -> bool {
    (mix64(key ^ (v as u64).wrapping_mul(GOLDEN)) as u128) < cutoff
}

/// A seeded planted-clique graph answered lazily, pair by pair.
///
/// No edge is ever materialized. Edge bits come from a keyed hash of
/// `(seed, min(u, v), max(u, v))`; pairs inside the hidden clique answer 1.
/// Fixed-size cliques are held as a sorted id list plus an `n`-bit membership
/// bitmap; iid cliques are decided per vertex by a second hash stream and only
/// listed on demand.
///
/// Algorithms receive this through the [`Graph`] trait, which cannot reveal
/// the clique. The harness uses [`HiddenClique`] to score outcomes.
pub struct AdjacencyOracle {
    spec: InstanceSpec,
    edges: EdgeFn,
    clique: Membership,
}

impl AdjacencyOracle {
    pub fn build(spec: &InstanceSpec) -> Result<Self> {
        spec.validate()?;
        let n = spec.n;
        let clique = match spec.kind {
            InstanceKind::ErdosRenyi => Membership::Empty,
            InstanceKind::PlantedFixed => {
                let k = spec.k.unwrap_or(0);
                if k == 0 {
                    Membership::Empty
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(mix64(spec.seed ^ CLIQUE_SALT));
                    let ids = VertexSet::from_unsorted(
                        index::sample(&mut rng, n, k)
                            .into_iter()
                            .map(|v| v as Vertex)
                            .collect(),
                    );
                    let mut bits = vec![0u64; n.div_ceil(64)];
                    for v in ids.iter() {
                        bits[(v >> 6) as usize] |= 1 << (v & 63);
                    }
                    Membership::Fixed { ids, bits }
                }
            }
            InstanceKind::PlantedIid => {
                let p = spec.p_clique.unwrap_or(0.0);
                Membership::Iid {
                    key: mix64(spec.seed ^ CLIQUE_SALT),
                    cutoff: (p * 18_446_744_073_709_551_616.0) as u128,
                    ids: OnceLock::new(),
                }
            }
        };
        Ok(Self {
            spec: spec.clone(),
            edges: EdgeFn::new(spec.seed),
            clique,
        })
    }

    pub fn spec(&self) -> &InstanceSpec {
        &self.spec
    }
}

impl Graph for AdjacencyOracle {
    #[inline]
    fn order(&self) -> usize {
        self.spec.n
    }

    #[inline]
    fn edge(&self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        (self.clique.contains(u) && self.clique.contains(v)) || self.edges.bit(u, v)
    }
}

impl HiddenClique for AdjacencyOracle {
    #[inline]
    fn is_planted(&self, v: Vertex) -> bool {
        self.clique.contains(v)
    }

    fn hidden_clique(&self) -> VertexSet {
        match &self.clique {
            Membership::Empty => VertexSet::new(),
            Membership::Fixed { ids, .. } => ids.clone(),
            Membership::Iid { key, cutoff, ids } => ids
                .get_or_init(|| {
                    (0..self.spec.n as Vertex)
                        .filter(|&v| iid_member(*key, *cutoff, v))
                        .collect()
                })
                .clone(),
        }
    }
}

impl std::fmt::Debug for AdjacencyOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AdjacencyOracle")
            .field("spec", &self.spec)
            .finish_non_exhaustive()
    }
}
