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

//! Simple undirected graphs on dense vertex labels `0..n`, together with
//! edge-induced subgraphs, edge selections and edge partitions.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod edge_partition;
pub mod generate;
pub mod io;
mod selection;

pub use edge_partition::EdgePartition;
pub use io::{emit_graph, parse_graph, Format};
pub use selection::{Side, SubgraphSelection};

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(EdgeId),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0} is not in the host graph")]
    EdgeNotInHost(EdgeId),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid generator parameters: {0}")]
    InvalidParameter(String),
    #[error("random regular sampling gave up after {0} attempts")]
    RetryBudgetExhausted(usize),
    #[error("invalid edge partition: {0}")]
    InvalidPartition(String),
}

/// Unordered vertex pair stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId {
    u: Vertex,
    v: Vertex,
}

impl EdgeId {
    /// Returns `None` for a loop.
    pub fn new(a: Vertex, b: Vertex) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(EdgeId { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(EdgeId { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn low(&self) -> Vertex {
        self.u
    }

    pub fn high(&self) -> Vertex {
        self.v
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        debug_assert!(self.contains(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Immutable simple graph.
///
/// Edges are kept sorted by [`EdgeId`]; the position of an edge in that order
/// is its index, which every per-edge table in this crate uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<EdgeId>,
    // (neighbor, edge index), sorted by neighbor
    adj: Vec<Vec<(Vertex, usize)>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, repeated pairs and out-of-range labels.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut seen = HashSet::new();
        let mut edges = Vec::new();
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            let e = EdgeId::new(a, b).ok_or(GraphError::SelfLoop(a))?;
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
            edges.push(e);
        }
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> EdgeId {
        self.edges[index]
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Neighbors paired with the index of the connecting edge, ascending by neighbor.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn edge_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        if a >= self.n || b >= self.n {
            return None;
        }
        let list = &self.adj[a];
        list.binary_search_by_key(&b, |&(w, _)| w)
            .ok()
            .map(|pos| list[pos].1)
    }

    pub fn index_of(&self, e: EdgeId) -> Option<usize> {
        self.edge_index(e.u, e.v)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        let r = self.adj.first().map(Vec::len)?;
        self.adj.iter().all(|l| l.len() == r).then_some(r)
    }

    /// Edges whose endpoints both have degree one.
    pub fn isolated_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .copied()
            .filter(|e| self.degree(e.u) == 1 && self.degree(e.v) == 1)
    }

    /// Whether the graph has neither isolated vertices nor isolated edges.
    pub fn is_normal(&self) -> bool {
        self.adj.iter().all(|l| !l.is_empty()) && self.isolated_edges().next().is_none()
    }
}

/// Free-function form of [`Graph::is_normal`].
pub fn is_normal(g: &Graph) -> bool {
    g.is_normal()
}

/// An edge-induced subgraph relabeled onto `0..k`, with maps back to the host.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// local vertex -> host vertex, increasing
    pub vertex_map: Vec<Vertex>,
    /// local edge index -> host edge index
    pub edge_map: Vec<usize>,
}

impl Subgraph {
    pub fn host_edge(&self, local: usize) -> usize {
        self.edge_map[local]
    }
}

/// The subgraph with edge set `edges` whose vertices are the endpoints of
/// those edges. Vertex labels are compacted in increasing host order.
pub fn edge_induced(g: &Graph, edges: &[EdgeId]) -> Result<Subgraph, GraphError> {
    let mut host_idx = Vec::with_capacity(edges.len());
    for &e in edges {
        host_idx.push(g.index_of(e).ok_or(GraphError::EdgeNotInHost(e))?);
    }
    edge_induced_by_index(g, &host_idx)
}

pub(crate) fn edge_induced_by_index(g: &Graph, host_idx: &[usize]) -> Result<Subgraph, GraphError> {
    let mut used = vec![false; g.vertex_count()];
    for &i in host_idx {
        let e = g.edge(i);
        used[e.u] = true;
        used[e.v] = true;
    }
    let vertex_map: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| used[v]).collect();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vertex_map.iter().enumerate() {
        local[v] = i;
    }
    let graph = Graph::from_edges(
        vertex_map.len(),
        host_idx.iter().map(|&i| {
            let e = g.edge(i);
            (local[e.u], local[e.v])
        }),
    )?;
    // Local edges are sorted by local labels, which preserve host order.
    let mut edge_map: Vec<usize> = host_idx.to_vec();
    edge_map.sort_unstable();
    debug_assert!(graph
        .edges()
        .iter()
        .zip(&edge_map)
        .all(|(le, &hi)| { EdgeId::new(vertex_map[le.u], vertex_map[le.v]) == Some(g.edge(hi)) }));
    Ok(Subgraph {
        graph,
        vertex_map,
        edge_map,
    })
}

/// Drops isolated vertices, relabeling the rest in increasing order.
pub fn without_isolated_vertices(g: &Graph) -> Graph {
    let all: Vec<usize> = (0..g.edge_count()).collect();
    edge_induced_by_index(g, &all)
        .expect("edges of a graph always induce a subgraph")
        .graph
}

/// Disjoint union; vertices of `b` are shifted by `a.vertex_count()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.vertex_count();
    Graph::from_edges(
        off + b.vertex_count(),
        a.edges()
            .iter()
            .map(|e| e.endpoints())
            .chain(b.edges().iter().map(|e| (e.u + off, e.v + off))),
    )
    .expect("disjoint union of simple graphs is simple")
}
