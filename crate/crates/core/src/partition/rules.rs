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

//! Membership in the family of admissible subgraphs, vertex types and
//! chains.
//!
//! With `Δ = Δ(G)` a selection `H` is admissible when `Δ(H) ≤ 3`, every
//! `Δ`-vertex has `d_H ≥ 2` and every `(Δ − 1)`-vertex has `d_H ≥ 1`.
//! Chain gates are numbered as they are used by the engine:
//!
//! * complement-side neighbor `u` of `v`: (1) `d_H(u) = 3`;
//!   (2) `d_H(u) = d_H̄(u) = 2`; (3) `d_H(u) ≤ 1`, `d_H̄(u) = 2` and the other
//!   complement neighbor `w` of `u` has `d_H̄(w) = 1`, `d_H(w) = 3`;
//! * selected-side neighbor `v` of `u`: (4) `1 ≤ d_H(v) ≤ 2` and
//!   `d(v) ≥ Δ − 1`; (5) `d_H(v) = 2`, `d(v) < Δ − 1` and the other selected
//!   neighbor `w` of `v` has `d_H(w) = 1`, `d(w) = Δ − 1`.

use serde::Serialize;

use crate::graph::{Graph, Side, SubgraphSelection, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MembershipCondition {
    /// `d_H(v) > 3`
    MaxDegree,
    /// `d(v) = Δ` but `d_H(v) < 2`
    FullDegree,
    /// `d(v) = Δ − 1` but `d_H(v) < 1`
    NearFullDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipViolation {
    pub vertex: Vertex,
    pub condition: MembershipCondition,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub violations: Vec<MembershipViolation>,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every admissibility violation of `sel`, by vertex.
pub fn check_membership(g: &Graph, sel: &SubgraphSelection<'_>) -> MembershipReport {
    let delta = g.max_degree();
    let mut violations = Vec::new();
    for v in g.vertices() {
        let dh = sel.degree(v);
        let d = g.degree(v);
        if dh > 3 {
            violations.push(MembershipViolation {
                vertex: v,
                condition: MembershipCondition::MaxDegree,
            });
        }
        if d == delta && dh < 2 {
            violations.push(MembershipViolation {
                vertex: v,
                condition: MembershipCondition::FullDegree,
            });
        } else if d + 1 == delta && dh < 1 {
            violations.push(MembershipViolation {
                vertex: v,
                condition: MembershipCondition::NearFullDegree,
            });
        }
    }
    MembershipReport { violations }
}

pub(crate) fn is_member(g: &Graph, sel: &SubgraphSelection<'_>) -> bool {
    let delta = g.max_degree();
    g.vertices().all(|v| {
        let dh = sel.degree(v);
        let d = g.degree(v);
        dh <= 3 && !(d == delta && dh < 2) && !(d + 1 == delta && dh < 1)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VertexType {
    TypeI,
    TypeII,
    Neither,
}

/// Read-only view bundling a selection with `Δ(G)`.
#[derive(Clone, Copy)]
pub(crate) struct Rules<'a, 'g> {
    pub g: &'g Graph,
    pub sel: &'a SubgraphSelection<'g>,
    pub delta: usize,
}

impl<'a, 'g> Rules<'a, 'g> {
    pub fn new(sel: &'a SubgraphSelection<'g>) -> Self {
        let g = sel.host();
        Rules {
            g,
            sel,
            delta: g.max_degree(),
        }
    }

    fn dh(&self, v: Vertex) -> usize {
        self.sel.degree(v)
    }

    fn dc(&self, v: Vertex) -> usize {
        self.sel.complement_degree(v)
    }

    fn d(&self, v: Vertex) -> usize {
        self.g.degree(v)
    }

    /// The unique `side`-neighbor of `x` other than `not`, when `x` has
    /// exactly two neighbors on that side.
    pub fn other_neighbor(&self, side: Side, x: Vertex, not: Vertex) -> Option<Vertex> {
        let mut it = self.sel.side_neighbors(side, x).filter(|&w| w != not);
        let w = it.next()?;
        it.next().is_none().then_some(w)
    }

    pub fn gate1(&self, u: Vertex) -> bool {
        self.dh(u) == 3
    }

    pub fn gate2(&self, u: Vertex) -> bool {
        self.dh(u) == 2 && self.dc(u) == 2
    }

    /// Gate (3) for complement neighbor `u` of `v`; returns the far end `w`.
    pub fn gate3(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        if self.dh(u) > 1 || self.dc(u) != 2 {
            return None;
        }
        let w = self.other_neighbor(Side::Complement, u, v)?;
        (self.dc(w) == 1 && self.dh(w) == 3).then_some(w)
    }

    pub fn gate4(&self, v: Vertex) -> bool {
        (1..=2).contains(&self.dh(v)) && self.d(v) + 1 >= self.delta
    }

    /// Gate (5) for selected neighbor `v` of `u`; returns the far end `w`.
    pub fn gate5(&self, u: Vertex, v: Vertex) -> Option<Vertex> {
        if self.dh(v) != 2 || self.d(v) + 1 >= self.delta {
            return None;
        }
        let w = self.other_neighbor(Side::Selected, v, u)?;
        (self.dh(w) == 1 && self.d(w) + 1 == self.delta).then_some(w)
    }

    /// Degree part of the type-I test.
    pub fn type_i_shape(&self, v: Vertex) -> bool {
        (1..=2).contains(&self.dh(v)) && self.d(v) + 1 >= self.delta
    }

    /// Degree part of the type-II test.
    pub fn type_ii_shape(&self, u: Vertex) -> bool {
        self.dh(u) == 3 || (self.dh(u) == 2 && self.dc(u) == 2)
    }

    /// First complement neighbor of `v` passing none of gates (1)–(3).
    pub fn type_i_blocker(&self, v: Vertex) -> Option<Vertex> {
        self.sel
            .side_neighbors(Side::Complement, v)
            .find(|&u| !self.gate1(u) && !self.gate2(u) && self.gate3(v, u).is_none())
    }

    /// First selected neighbor of `u` passing neither gate (4) nor (5).
    pub fn type_ii_blocker(&self, u: Vertex) -> Option<Vertex> {
        self.sel
            .side_neighbors(Side::Selected, u)
            .find(|&v| !self.gate4(v) && self.gate5(u, v).is_none())
    }

    pub fn is_type_i(&self, v: Vertex) -> bool {
        self.type_i_shape(v) && self.type_i_blocker(v).is_none()
    }

    pub fn is_type_ii(&self, u: Vertex) -> bool {
        self.type_ii_shape(u) && self.type_ii_blocker(u).is_none()
    }

    pub fn classify(&self, v: Vertex) -> VertexType {
        if self.is_type_i(v) {
            VertexType::TypeI
        } else if self.is_type_ii(v) {
            VertexType::TypeII
        } else {
            VertexType::Neither
        }
    }

    pub fn chains(&self, from: Vertex, kind: ChainKind) -> Vec<Chain> {
        let mut out = Vec::new();
        match kind {
            ChainKind::Selected => {
                for v in self.sel.side_neighbors(Side::Selected, from) {
                    if self.gate4(v) {
                        out.push(Chain::new(kind, vec![from, v]));
                    } else if let Some(w) = self.gate5(from, v) {
                        out.push(Chain::new(kind, vec![from, v, w]));
                    }
                }
            }
            ChainKind::Complement => {
                for u in self.sel.side_neighbors(Side::Complement, from) {
                    if self.gate1(u) || self.gate2(u) {
                        out.push(Chain::new(kind, vec![from, u]));
                    } else if let Some(w) = self.gate3(from, u) {
                        out.push(Chain::new(kind, vec![from, u, w]));
                    }
                }
            }
        }
        out
    }
}

/// Exact type of `v` under the current selection.
pub fn classify_vertex(sel: &SubgraphSelection<'_>, v: Vertex) -> VertexType {
    Rules::new(sel).classify(v)
}

/// Whether the type-I and type-II predicates both hold at `v`. Never true
/// when `Δ ≥ 6`; exposed for property tests.
pub fn both_types(sel: &SubgraphSelection<'_>, v: Vertex) -> bool {
    let r = Rules::new(sel);
    r.is_type_i(v) && r.is_type_ii(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ChainKind {
    /// runs through selected edges, from a type-II vertex to a type-I vertex
    Selected,
    /// runs through complement edges, from a type-I vertex to a type-II vertex
    Complement,
}

impl ChainKind {
    pub fn flip(self) -> ChainKind {
        match self {
            ChainKind::Selected => ChainKind::Complement,
            ChainKind::Complement => ChainKind::Selected,
        }
    }

    pub fn side(self) -> Side {
        match self {
            ChainKind::Selected => Side::Selected,
            ChainKind::Complement => Side::Complement,
        }
    }
}

/// A two- or three-vertex path: emanating vertex, optional middle, end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub kind: ChainKind,
    pub vertices: Vec<Vertex>,
}

impl Chain {
    fn new(kind: ChainKind, vertices: Vec<Vertex>) -> Self {
        debug_assert!((2..=3).contains(&vertices.len()));
        Chain { kind, vertices }
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn middle(&self) -> Option<Vertex> {
        (self.vertices.len() == 3).then(|| self.vertices[1])
    }

    /// Host edge indices along the chain.
    pub fn edge_indices(&self, g: &Graph) -> Vec<usize> {
        self.vertices
            .windows(2)
            .map(|w| g.edge_index(w[0], w[1]).expect("chain edges exist in the host"))
            .collect()
    }
}

/// All chains of `kind` emanating from `from`, ordered by neighbor index.
pub fn enumerate_chains(sel: &SubgraphSelection<'_>, from: Vertex, kind: ChainKind) -> Vec<Chain> {
    Rules::new(sel).chains(from, kind)
}
