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


//! Independent checkers and brute-force oracles.
//!
//! Nothing here shares code with the colorers it checks: properness and the
//! AVD condition are tested straight from their definitions, and the exact
//! oracles are a separate naive search over edges in index order.

mod audit;

pub use audit::{audit, AuditConfig, AuditReport, BoundRow, CheckEntry, GraphSummary};

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::avd::AvdCertificate;
use crate::graph::{EdgeId, Graph, Vertex};
use crate::vizing::{Color, EdgeColoring};

/// Default edge cap for the exact oracles.
pub const DEFAULT_ORACLE_EDGE_CAP: usize = 16;

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
pub enum CheckFailure {
    #[error("coloring has {found} entries for {expected} edges")]
    Incomplete { expected: usize, found: usize },
    #[error("edge {edge} is uncolored")]
    Uncolored { edge: EdgeId },
    #[error("edges {first} and {second} meet at {vertex} with color {color}")]
    IncidentPair {
        vertex: Vertex,
        first: EdgeId,
        second: EdgeId,
        color: Color,
    },
    #[error("adjacent vertices {u} and {v} both see colors {colors:?}")]
    EqualColorSets { u: Vertex, v: Vertex, colors: Vec<Color> },
    #[error("coloring is not proper: {0}")]
    NotProper(Box<CheckFailure>),
    #[error("certificate claims {claimed} colors but uses {actual}")]
    ColorCountMismatch { claimed: usize, actual: usize },
    #[error("certificate uses {used} colors above its bound {bound}")]
    AboveBound { used: usize, bound: usize },
    #[error("bad witness on edge {edge}: {reason}")]
    BadWitness { edge: EdgeId, reason: String },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("no coloring with at most {cap} colors")]
    CapExceeded { cap: usize },
    #[error("graph has {edges} edges, above the oracle cap {cap}")]
    TooLarge { edges: usize, cap: usize },
    #[error("graph is not normal")]
    NotNormal,
}

fn color_sets(g: &Graph, c: &EdgeColoring) -> Vec<BTreeSet<Color>> {
    let mut sets = vec![BTreeSet::new(); g.vertex_count()];
    for (i, e) in g.edges().iter().enumerate() {
        sets[e.low()].insert(c.color(i));
        sets[e.high()].insert(c.color(i));
    }
    sets
}

/// Whether every edge has a color and incident edges differ. On failure
/// returns the first offending incident pair.
pub fn check_proper(g: &Graph, c: &EdgeColoring) -> Result<(), CheckFailure> {
    if c.len() != g.edge_count() {
        return Err(CheckFailure::Incomplete {
            expected: g.edge_count(),
            found: c.len(),
        });
    }
    if let Some(i) = (0..c.len()).find(|&i| c.color(i) == 0) {
        return Err(CheckFailure::Uncolored { edge: g.edge(i) });
    }
    for v in g.vertices() {
        let mut seen: Vec<(Color, usize)> = g.incident(v).iter().map(|&(_, e)| (c.color(e), e)).collect();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(CheckFailure::IncidentPair {
                    vertex: v,
                    first: g.edge(w[0].1),
                    second: g.edge(w[1].1),
                    color: w[0].0,
                });
            }
        }
    }
    Ok(())
}

/// Whether a proper coloring gives adjacent vertices distinct color sets.
pub fn check_avd(g: &Graph, c: &EdgeColoring) -> Result<(), CheckFailure> {
    check_proper(g, c).map_err(|f| CheckFailure::NotProper(Box::new(f)))?;
    let sets = color_sets(g, c);
    for e in g.edges() {
        let (u, v) = e.endpoints();
        if sets[u] == sets[v] {
            return Err(CheckFailure::EqualColorSets {
                u,
                v,
                colors: sets[u].iter().copied().collect(),
            });
        }
    }
    Ok(())
}

/// Full certificate check: properness, the AVD condition, the color count,
/// the claimed bound, and one valid witness on every edge whose ends have
/// equal degree (and on no other edge).
pub fn check_certificate(g: &Graph, cert: &AvdCertificate) -> Result<(), CheckFailure> {
    check_avd(g, &cert.coloring)?;
    let actual = cert.coloring.palette().len();
    if actual != cert.colors_used {
        return Err(CheckFailure::ColorCountMismatch {
            claimed: cert.colors_used,
            actual,
        });
    }
    if actual > cert.bound_claimed {
        return Err(CheckFailure::AboveBound {
            used: actual,
            bound: cert.bound_claimed,
        });
    }
    let sets = color_sets(g, &cert.coloring);
    let mut witnessed = BTreeSet::new();
    for w in &cert.witnesses {
        let bad = |reason: &str| CheckFailure::BadWitness {
            edge: w.edge,
            reason: reason.to_string(),
        };
        if !g.has_edge(w.edge.low(), w.edge.high()) {
            return Err(bad("not an edge of the graph"));
        }
        let (u, v) = w.edge.endpoints();
        if g.degree(u) != g.degree(v) {
            return Err(bad("endpoint degrees differ"));
        }
        if sets[u].contains(&w.color) == sets[v].contains(&w.color) {
            return Err(bad("color is not in exactly one endpoint set"));
        }
        if !witnessed.insert(w.edge) {
            return Err(bad("duplicate witness"));
        }
    }
    if let Some(e) = g
        .edges()
        .iter()
        .find(|e| g.degree(e.low()) == g.degree(e.high()) && !witnessed.contains(e))
    {
        return Err(CheckFailure::BadWitness {
            edge: *e,
            reason: "missing witness".into(),
        });
    }
    Ok(())
}

/// Naive edge-by-edge search for a `k`-coloring in edge index order. A new
/// color is only opened once all smaller ones are in use.
struct Naive<'g> {
    g: &'g Graph,
    k: Color,
    avd: bool,
    colors: Vec<Color>,
    /// edge index after which vertex `v` is fully colored
    last_edge: Vec<usize>,
    /// for each edge, vertices that become fully colored with it
    closes: Vec<Vec<Vertex>>,
}

impl<'g> Naive<'g> {
    fn new(g: &'g Graph, k: Color, avd: bool) -> Self {
        let mut last_edge = vec![0; g.vertex_count()];
        for (i, e) in g.edges().iter().enumerate() {
            last_edge[e.low()] = i;
            last_edge[e.high()] = i;
        }
        let mut closes = vec![Vec::new(); g.edge_count()];
        for v in g.vertices() {
            if g.degree(v) > 0 {
                closes[last_edge[v]].push(v);
            }
        }
        Naive {
            g,
            k,
            avd,
            colors: vec![0; g.edge_count()],
            last_edge,
            closes,
        }
    }

    fn set_of(&self, v: Vertex) -> Vec<Color> {
        let mut s: Vec<Color> = self.g.incident(v).iter().map(|&(_, e)| self.colors[e]).collect();
        s.sort_unstable();
        s
    }

    fn fits(&self, i: usize) -> bool {
        let e = self.g.edge(i);
        let c = self.colors[i];
        for x in [e.low(), e.high()] {
            for &(_, f) in self.g.incident(x) {
                if f != i && self.colors[f] == c {
                    return false;
                }
            }
        }
        if self.avd {
            for &v in &self.closes[i] {
                let mine = self.set_of(v);
                for w in self.g.neighbors(v) {
                    if self.last_edge[w] <= i && self.set_of(w) == mine {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, i: usize, opened: Color) -> bool {
        if i == self.colors.len() {
            return true;
        }
        let top = self.k.min(opened + 1);
        for c in 1..=top {
            self.colors[i] = c;
            if self.fits(i) && self.run(i + 1, opened.max(c)) {
                return true;
            }
        }
        self.colors[i] = 0;
        false
    }
}

fn colorable(g: &Graph, k: usize, avd: bool) -> Option<EdgeColoring> {
    let mut s = Naive::new(g, k as Color, avd);
    s.run(0, 0).then(|| EdgeColoring::new(s.colors))
}

/// Smallest `k ≤ cap` admitting an AVD edge `k`-coloring of a normal graph.
pub fn exact_chi_a(g: &Graph, cap: usize) -> Result<usize, OracleError> {
    if !crate::graph::is_normal(g) {
        return Err(OracleError::NotNormal);
    }
    (g.max_degree().max(1)..=cap)
        .find(|&k| colorable(g, k, true).is_some())
        .ok_or(OracleError::CapExceeded { cap })
}

/// Exact chromatic index for graphs with at most [`DEFAULT_ORACLE_EDGE_CAP`] edges.
pub fn exact_chromatic_index(g: &Graph) -> Result<usize, OracleError> {
    exact_chromatic_index_capped(g, DEFAULT_ORACLE_EDGE_CAP)
}

/// Exact chromatic index, refusing graphs with more than `edge_cap` edges.
pub fn exact_chromatic_index_capped(g: &Graph, edge_cap: usize) -> Result<usize, OracleError> {
    if g.edge_count() > edge_cap {
        return Err(OracleError::TooLarge {
            edges: g.edge_count(),
            cap: edge_cap,
        });
    }
    let delta = g.max_degree();
    if delta == 0 {
        return Ok(0);
    }
    let k = (delta..=delta + 1)
        .find(|&k| colorable(g, k, false).is_some())
        .expect("Δ + 1 colors always suffice");
    Ok(k)
}
