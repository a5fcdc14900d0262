// SPDX-License-Identifier: Apache-2.0

use super::{Graph, Vertex, VertexSet};

/// Subgraph induced by a vertex list, relabelled to dense ids `[0, len)`.
///
/// Local id `i` stands for `members[i]` in the parent. Probes through the
/// view are charged to whichever ledger the caller passes, so nested
/// algorithms bill the parent run.
pub struct InducedView<'a, G: ?Sized> {
    parent: &'a G,
    members: Vec<Vertex>,
}

impl<'a, G: Graph + ?Sized> InducedView<'a, G> {
    /// `members` must be distinct ids of `parent`.
    pub fn new(parent: &'a G, members: Vec<Vertex>) -> Self {
        debug_assert!(members.iter().all(|&v| (v as usize) < parent.order()));
        Self { parent, members }
    }

    pub fn identity(parent: &'a G) -> Self {
        Self::new(parent, (0..parent.order() as Vertex).collect())
    }

    pub fn to_parent(&self, local: Vertex) -> Vertex {
        self.members[local as usize]
    }

    pub fn lift(&self, local: &VertexSet) -> VertexSet {
        local.iter().map(|v| self.to_parent(v)).collect()
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }
}

impl<G: Graph + ?Sized> Graph for InducedView<'_, G> {
    #[inline]
    fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    fn edge(&self, u: Vertex, v: Vertex) -> bool {
        self.parent
            .edge(self.members[u as usize], self.members[v as usize])
    }

    fn root_id(&self, v: Vertex) -> Vertex {
        self.parent.root_id(self.members[v as usize])
    }
}
