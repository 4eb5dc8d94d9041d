// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::collections::BTreeSet;

use super::{EdgeId, Graph, GraphError, Vertex};

/// Which half of a selection: the selected edges `H` or the rest `H̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Selected,
    Complement,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Selected => Side::Complement,
            Side::Complement => Side::Selected,
        }
    }
}

/// A subset `H` of a host graph's edges.
///
/// Degrees on both sides and the isolated-edge sets of `H` and its
/// complement are maintained incrementally. Every mutation bumps
/// [`version`](Self::version).
#[derive(Clone, Debug)]
pub struct SubgraphSelection<'g> {
    host: &'g Graph,
    selected: Vec<bool>,
    degree: Vec<usize>,
    size: usize,
    isolated_sel: BTreeSet<usize>,
    isolated_comp: BTreeSet<usize>,
    version: u64,
}

impl<'g> SubgraphSelection<'g> {
    /// The empty selection; every host edge is on the complement side.
    pub fn new(host: &'g Graph) -> Self {
        let mut s = SubgraphSelection {
            host,
            selected: vec![false; host.edge_count()],
            degree: vec![0; host.vertex_count()],
            size: 0,
            isolated_sel: BTreeSet::new(),
            isolated_comp: BTreeSet::new(),
            version: 0,
        };
        s.rebuild_isolated();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(host: &'g Graph, edges: I) -> Self {
        let mut s = Self::new(host);
        for e in edges {
            s.insert(e);
        }
        s
    }

    pub fn from_edges(host: &'g Graph, edges: &[EdgeId]) -> Result<Self, GraphError> {
        let mut s = Self::new(host);
        for &e in edges {
            let i = host.index_of(e).ok_or(GraphError::EdgeNotInHost(e))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.selected[edge]
    }

    pub fn side_of(&self, edge: usize) -> Side {
        if self.selected[edge] {
            Side::Selected
        } else {
            Side::Complement
        }
    }

    /// Number of selected edges, `|E(H)|`.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// `d_H(v)`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.degree[v]
    }

    /// `d_H̄(v)`.
    pub fn complement_degree(&self, v: Vertex) -> usize {
        self.host.degree(v) - self.degree[v]
    }

    pub fn side_degree(&self, side: Side, v: Vertex) -> usize {
        match side {
            Side::Selected => self.degree(v),
            Side::Complement => self.complement_degree(v),
        }
    }

    /// Neighbors of `v` across edges on `side`, ascending.
    pub fn side_neighbors(&self, side: Side, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.host
            .incident(v)
            .iter()
            .filter(move |&&(_, e)| self.side_of(e) == side)
            .map(|&(w, _)| w)
    }

    pub fn selected_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.selected.len()).filter(|&i| self.selected[i])
    }

    pub fn complement_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.selected.len()).filter(|&i| !self.selected[i])
    }

    pub fn selected_edges(&self) -> Vec<EdgeId> {
        self.selected_indices().map(|i| self.host.edge(i)).collect()
    }

    pub fn complement_edges(&self) -> Vec<EdgeId> {
        self.complement_indices().map(|i| self.host.edge(i)).collect()
    }

    /// Isolated edges of one side, ascending by edge index.
    pub fn isolated(&self, side: Side) -> &BTreeSet<usize> {
        match side {
            Side::Selected => &self.isolated_sel,
            Side::Complement => &self.isolated_comp,
        }
    }

    /// `i(H) + i(H̄)`.
    pub fn isolated_total(&self) -> usize {
        self.isolated_sel.len() + self.isolated_comp.len()
    }

    /// Lexicographic potential `(i(H) + i(H̄), |E(H)|)`.
    pub fn potential(&self) -> (usize, usize) {
        (self.isolated_total(), self.size)
    }

    /// Adds an edge to `H`; returns false if it was already selected.
    pub fn insert(&mut self, edge: usize) -> bool {
        if self.selected[edge] {
            return false;
        }
        self.selected[edge] = true;
        self.size += 1;
        self.touch(edge, 1);
        true
    }

    /// Moves an edge back to `H̄`; returns false if it was not selected.
    pub fn remove(&mut self, edge: usize) -> bool {
        if !self.selected[edge] {
            return false;
        }
        self.selected[edge] = false;
        self.size -= 1;
        self.touch(edge, -1);
        true
    }

    fn touch(&mut self, edge: usize, delta: isize) {
        let (a, b) = self.host.edge(edge).endpoints();
        for x in [a, b] {
            self.degree[x] = (self.degree[x] as isize + delta) as usize;
        }
        self.version += 1;
        // only edges at a or b can change isolation status
        for x in [a, b] {
            for &(_, f) in self.host.incident(x) {
                self.refresh(f);
            }
        }
    }

    fn refresh(&mut self, edge: usize) {
        self.isolated_sel.remove(&edge);
        self.isolated_comp.remove(&edge);
        let (a, b) = self.host.edge(edge).endpoints();
        let side = self.side_of(edge);
        if self.side_degree(side, a) == 1 && self.side_degree(side, b) == 1 {
            match side {
                Side::Selected => self.isolated_sel.insert(edge),
                Side::Complement => self.isolated_comp.insert(edge),
            };
        }
    }

    fn rebuild_isolated(&mut self) {
        self.isolated_sel.clear();
        self.isolated_comp.clear();
        for e in 0..self.selected.len() {
            self.refresh(e);
        }
    }

    /// Selection of the complementary edge set on the same host.
    pub fn complement(&self) -> SubgraphSelection<'g> {
        let mut c = SubgraphSelection {
            host: self.host,
            selected: self.selected.iter().map(|s| !s).collect(),
            degree: self
                .host
                .vertices()
                .map(|v| self.complement_degree(v))
                .collect(),
            size: self.host.edge_count() - self.size,
            isolated_sel: self.isolated_comp.clone(),
            isolated_comp: self.isolated_sel.clone(),
            version: 0,
        };
        c.version = self.version + 1;
        c
    }

    /// Largest selected degree, `Δ(H)`.
    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// Largest complement degree, `Δ(H̄)`.
    pub fn max_complement_degree(&self) -> usize {
        self.host
            .vertices()
            .map(|v| self.complement_degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Recomputes degrees and isolated sets from scratch and reports any
    /// disagreement with the incrementally maintained values.
    pub fn audit_bookkeeping(&self) -> Result<(), String> {
        let mut deg = vec![0usize; self.host.vertex_count()];
        let mut size = 0;
        for (i, e) in self.host.edges().iter().enumerate() {
            if self.selected[i] {
                deg[e.low()] += 1;
                deg[e.high()] += 1;
                size += 1;
            }
        }
        if deg != self.degree {
            return Err("selected degree table is stale".into());
        }
        if size != self.size {
            return Err(format!("size {} but {} edges selected", self.size, size));
        }
        let mut fresh = self.clone();
        fresh.rebuild_isolated();
        if fresh.isolated_sel != self.isolated_sel || fresh.isolated_comp != self.isolated_comp {
            return Err("isolated-edge sets are stale".into());
        }
        Ok(())
    }
}

impl PartialEq for SubgraphSelection<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.host, other.host) && self.selected == other.selected
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle, rng};
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn complement_of_everything_is_empty() {
        let g = complete(5);
        let all = SubgraphSelection::from_indices(&g, 0..g.edge_count());
        let c = all.complement();
        assert!(c.is_empty());
        assert_eq!(c.complement(), all);
    }

    #[test]
    fn complement_degrees_on_c5() {
        let g = cycle(5);
        let sel = SubgraphSelection::from_indices(&g, [0, 2]);
        let c = sel.complement();
        assert_eq!(c.len(), 3);
        for v in g.vertices() {
            assert_eq!(sel.degree(v) + c.degree(v), 2);
        }
        c.audit_bookkeeping().unwrap();
    }

    #[test]
    fn isolated_edges_tracked() {
        // path 0-1-2-3: select the middle edge only
        let g = crate::graph::generate::path(4);
        let mid = g.edge_index(1, 2).unwrap();
        let mut sel = SubgraphSelection::new(&g);
        assert_eq!(sel.isolated(Side::Complement).len(), 0);
        sel.insert(mid);
        assert_eq!(sel.isolated(Side::Selected).iter().copied().collect::<Vec<_>>(), vec![mid]);
        // both end edges are now isolated in the complement
        assert_eq!(sel.isolated(Side::Complement).len(), 2);
        assert_eq!(sel.potential(), (3, 1));
        sel.remove(mid);
        assert_eq!(sel.potential(), (0, 0));
        assert!(!sel.remove(mid));
    }

    #[test]
    fn version_bumps() {
        let g = cycle(4);
        let mut sel = SubgraphSelection::new(&g);
        let v0 = sel.version();
        sel.insert(0);
        assert!(sel.version() > v0);
        let v1 = sel.version();
        sel.insert(0);
        assert_eq!(sel.version(), v1);
    }

    proptest! {
        #[test]
        fn incremental_matches_recompute(seed in any::<u64>(), steps in 1usize..200) {
            let g = crate::graph::generate::gnp(12, 0.4, seed).unwrap();
            prop_assume!(g.edge_count() > 0);
            let mut r = rng(seed ^ 0x5eed);
            let mut sel = SubgraphSelection::new(&g);
            for _ in 0..steps {
                let e = r.gen_range(0..g.edge_count());
                if r.gen_bool(0.5) { sel.insert(e); } else { sel.remove(e); }
                prop_assert!(sel.audit_bookkeeping().is_ok());
                for v in g.vertices() {
                    prop_assert_eq!(sel.degree(v) + sel.complement_degree(v), g.degree(v));
                }
            }
            let c = sel.complement();
            prop_assert!(c.audit_bookkeeping().is_ok());
            prop_assert_eq!(c.complement(), sel);
        }
    }
}
