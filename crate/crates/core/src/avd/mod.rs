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


//! AVD edge colorings: exact budgeted search, palette-disjoint composition
//! and the bound-respecting drivers.

pub mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{edge_induced, io, EdgeId, Format, Graph, GraphError, Subgraph};
use crate::partition::{partition_p2, partition_regular, PartitionError};
use crate::verify::{check_avd, CheckFailure};
use crate::vizing::{Color, EdgeColoring};

pub use search::{search, SearchConfig, SearchOutcome, MAX_BUDGET};

#[derive(Debug, Error)]
pub enum AvdError {
    #[error("graph is not normal")]
    NotNormal,
    #[error("graph is not regular")]
    NotRegular,
    #[error("maximum degree {found} is above {max}")]
    DegreeTooLarge { max: usize, found: usize },
    #[error("budget {budget} is below the maximum degree {delta}")]
    BudgetTooSmall { budget: usize, delta: usize },
    #[error("budget {budget} is above the supported {max}")]
    BudgetTooLarge { budget: usize, max: usize },
    #[error("no AVD coloring with {budget} colors after every retry; graph6 {graph6}")]
    InternalBoundViolation { budget: usize, graph6: String },
    #[error("{colors} colors exceed the bound {bound}")]
    AboveBound { colors: usize, bound: usize },
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("part {part} certificate is invalid: {failure}")]
    InvalidPart { part: usize, failure: CheckFailure },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An edge whose ends have equal degree, with a color seen at exactly one end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub edge: EdgeId,
    pub color: Color,
}

/// A coloring together with what an independent checker needs to confirm it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvdCertificate {
    pub coloring: EdgeColoring,
    pub colors_used: usize,
    pub bound_claimed: usize,
    pub witnesses: Vec<Witness>,
    /// how `bound_claimed` was obtained
    pub bound_note: String,
}

impl AvdCertificate {
    /// Wraps a coloring, computing the color count and witnesses.
    ///
    /// # Panics
    /// If two adjacent vertices of equal degree see the same color set.
    pub fn new(g: &Graph, coloring: EdgeColoring, bound_claimed: usize, bound_note: impl Into<String>) -> Self {
        let witnesses = g
            .edges()
            .iter()
            .filter(|e| g.degree(e.low()) == g.degree(e.high()))
            .map(|&e| {
                let a = coloring.vertex_colors(g, e.low());
                let b = coloring.vertex_colors(g, e.high());
                let color = *a
                    .symmetric_difference(&b)
                    .next()
                    .expect("witnesses are only built for AVD colorings");
                Witness { edge: e, color }
            })
            .collect();
        AvdCertificate {
            colors_used: coloring.palette_size(),
            coloring,
            bound_claimed,
            witnesses,
            bound_note: bound_note.into(),
        }
    }

    fn with_bound(mut self, bound: usize, note: impl Into<String>) -> Result<Self, AvdError> {
        if self.colors_used > bound {
            return Err(AvdError::AboveBound {
                colors: self.colors_used,
                bound,
            });
        }
        self.bound_claimed = bound;
        self.bound_note = note.into();
        Ok(self)
    }

    /// Structured text form listing edges, color sets, witnesses and bound.
    pub fn to_json(&self, g: &Graph) -> String {
        let doc = CertificateDocument {
            vertices: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, &e)| ColoredEdge {
                    u: e.low(),
                    v: e.high(),
                    color: self.coloring.color(i),
                })
                .collect(),
            vertex_colors: g
                .vertices()
                .map(|v| self.coloring.vertex_colors(g, v).into_iter().collect())
                .collect(),
            witnesses: self.witnesses.clone(),
            colors_used: self.colors_used,
            bound_claimed: self.bound_claimed,
            bound_note: self.bound_note.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("certificate serializes")
    }

    /// Reads a certificate written by [`AvdCertificate::to_json`] and
    /// aligns its edge colors with `g`. Only structural agreement is checked
    /// here; use [`crate::verify::check_certificate`] for validity.
    pub fn from_json(g: &Graph, text: &str) -> Result<Self, CertificateParseError> {
        let doc: CertificateDocument = serde_json::from_str(text)?;
        if doc.vertices != g.vertex_count() || doc.edges.len() != g.edge_count() {
            return Err(CertificateParseError::Mismatch(format!(
                "certificate has {} vertices and {} edges, graph has {} and {}",
                doc.vertices,
                doc.edges.len(),
                g.vertex_count(),
                g.edge_count()
            )));
        }
        let mut colors = vec![0; g.edge_count()];
        for ce in &doc.edges {
            let i = g
                .edge_index(ce.u, ce.v)
                .ok_or_else(|| CertificateParseError::Mismatch(format!("edge {}-{} not in graph", ce.u, ce.v)))?;
            if colors[i] != 0 {
                return Err(CertificateParseError::Mismatch(format!("edge {}-{} listed twice", ce.u, ce.v)));
            }
            colors[i] = ce.color;
        }
        Ok(AvdCertificate {
            coloring: EdgeColoring::new(colors),
            colors_used: doc.colors_used,
            bound_claimed: doc.bound_claimed,
            witnesses: doc.witnesses,
            bound_note: doc.bound_note,
        })
    }
}

#[derive(Debug, Error)]
pub enum CertificateParseError {
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("certificate does not match the graph: {0}")]
    Mismatch(String),
}

#[derive(Serialize, Deserialize)]
struct ColoredEdge {
    u: usize,
    v: usize,
    color: Color,
}

#[derive(Serialize, Deserialize)]
struct CertificateDocument {
    vertices: usize,
    edges: Vec<ColoredEdge>,
    vertex_colors: Vec<Vec<Color>>,
    witnesses: Vec<Witness>,
    colors_used: usize,
    bound_claimed: usize,
    bound_note: String,
}

/// Limits for the searches run by the drivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorConfig {
    /// node cap for one capped search attempt
    pub node_cap: u64,
    /// reseeded capped attempts at the guaranteed budget before the
    /// uncapped final attempt
    pub restarts: u32,
}

impl Default for ColorConfig {
    fn default() -> Self {
        ColorConfig {
            node_cap: 1_000_000,
            restarts: 8,
        }
    }
}

/// Outcome of a single-budget request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BudgetOutcome {
    Certified(AvdCertificate),
    Unsatisfiable,
}

/// Complete search for an AVD coloring with at most `budget` colors.
pub fn avd_color_budget(g: &Graph, budget: usize) -> Result<BudgetOutcome, AvdError> {
    check_budget(g, budget)?;
    // a color per edge is always AVD on a normal graph, so larger budgets
    // add nothing
    let effective = budget.min(g.edge_count());
    if effective > MAX_BUDGET {
        return Err(AvdError::BudgetTooLarge { budget, max: MAX_BUDGET });
    }
    Ok(match search(g, effective, &SearchConfig::default()) {
        SearchOutcome::Colored(c) => BudgetOutcome::Certified(AvdCertificate::new(g, c, budget, "budget")),
        SearchOutcome::Unsatisfiable => BudgetOutcome::Unsatisfiable,
        SearchOutcome::CapReached => unreachable!("uncapped search"),
    })
}

fn check_budget(g: &Graph, budget: usize) -> Result<(), AvdError> {
    if !g.is_normal() {
        return Err(AvdError::NotNormal);
    }
    if budget < g.max_degree() {
        return Err(AvdError::BudgetTooSmall {
            budget,
            delta: g.max_degree(),
        });
    }
    Ok(())
}

fn graph6(g: &Graph) -> String {
    String::from_utf8(io::emit_graph(g, Format::Graph6))
        .expect("graph6 is ASCII")
        .trim_end()
        .to_string()
}

/// Tries budgets from `Δ(g)` up to `guaranteed`, returning the first success.
///
/// Budgets below `guaranteed` get one capped attempt each. At `guaranteed`
/// the search runs capped with `config.restarts` reseeded edge orders and
/// finally without a cap; failure there is an internal bound violation.
pub fn ascend(g: &Graph, guaranteed: usize, config: &ColorConfig) -> Result<AvdCertificate, AvdError> {
    check_budget(g, guaranteed)?;
    let capped = |seed| SearchConfig {
        node_cap: Some(config.node_cap),
        order_seed: seed,
    };
    let certify = |c| Ok(AvdCertificate::new(g, c, guaranteed, "ascending budget search"));
    for budget in g.max_degree()..guaranteed {
        if let SearchOutcome::Colored(c) = search(g, budget.min(MAX_BUDGET), &capped(None)) {
            return certify(c);
        }
    }
    let budget = guaranteed.min(MAX_BUDGET);
    for seed in std::iter::once(None).chain((0..config.restarts as u64).map(Some)) {
        match search(g, budget, &capped(seed)) {
            SearchOutcome::Colored(c) => return certify(c),
            SearchOutcome::Unsatisfiable => break,
            SearchOutcome::CapReached => {}
        }
    }
    match search(g, budget, &SearchConfig::default()) {
        SearchOutcome::Colored(c) => certify(c),
        _ => Err(AvdError::InternalBoundViolation {
            budget: guaranteed,
            graph6: graph6(g),
        }),
    }
}

/// At most five colors for a normal graph with `Δ ≤ 3`.
pub fn avd_subcubic(g: &Graph) -> Result<AvdCertificate, AvdError> {
    avd_subcubic_with(g, &ColorConfig::default())
}

pub fn avd_subcubic_with(g: &Graph, config: &ColorConfig) -> Result<AvdCertificate, AvdError> {
    if !g.is_normal() {
        return Err(AvdError::NotNormal);
    }
    if g.max_degree() > 3 {
        return Err(AvdError::DegreeTooLarge {
            max: 3,
            found: g.max_degree(),
        });
    }
    ascend(g, 5, config)?.with_bound(5, "5 for Δ ≤ 3")
}

/// Glues part certificates onto disjoint palettes.
///
/// Each part is an edge-induced subgraph of `host` with a certificate for
/// its local labels. Part `i` keeps its color order but is shifted past the
/// palettes of parts `0..i`, so the host uses the sum of the part palette
/// sizes. The parts must be normal and partition the host's edges.
pub fn compose(host: &Graph, parts: &[(Subgraph, AvdCertificate)]) -> Result<AvdCertificate, AvdError> {
    let mut colors: Vec<Color> = vec![0; host.edge_count()];
    let mut offset: Color = 0;
    for (i, (sub, cert)) in parts.iter().enumerate() {
        if !sub.graph.is_normal() {
            return Err(AvdError::InvalidComposition(format!("part {i} is not normal")));
        }
        check_avd(&sub.graph, &cert.coloring).map_err(|failure| AvdError::InvalidPart { part: i, failure })?;
        let local = cert.coloring.compacted();
        for (le, &he) in sub.edge_map.iter().enumerate() {
            let hv = host.edge(he);
            let lv = sub.graph.edge(le);
            if EdgeId::new(sub.vertex_map[lv.low()], sub.vertex_map[lv.high()]) != Some(hv) {
                return Err(AvdError::InvalidComposition(format!("part {i} maps edge {lv} to {hv}")));
            }
            if colors[he] != 0 {
                return Err(AvdError::InvalidComposition(format!("edge {hv} is in two parts")));
            }
            colors[he] = local.color(le) + offset;
        }
        offset += local.palette_size() as Color;
    }
    if let Some(i) = colors.iter().position(|&c| c == 0) {
        return Err(AvdError::InvalidComposition(format!("edge {} is in no part", host.edge(i))));
    }
    let coloring = EdgeColoring::new(colors);
    debug_assert!(check_avd(host, &coloring).is_ok());
    let used = offset as usize;
    Ok(AvdCertificate::new(host, coloring, used, "sum of part palettes"))
}

/// `⌊5(Δ + 2)/2⌋`, the bound met by [`avd_color`].
pub fn general_bound(delta: usize) -> usize {
    5 * (delta + 2) / 2
}

/// `⌊(5r + 37)/3⌋`, the bound met by [`avd_color_regular`].
pub fn regular_bound(r: usize) -> usize {
    (5 * r + 37) / 3
}

/// AVD coloring of a normal graph within `⌊5(Δ + 2)/2⌋` colors.
pub fn avd_color(g: &Graph) -> Result<AvdCertificate, AvdError> {
    avd_color_with(g, &ColorConfig::default())
}

pub fn avd_color_with(g: &Graph, config: &ColorConfig) -> Result<AvdCertificate, AvdError> {
    if !g.is_normal() {
        return Err(AvdError::NotNormal);
    }
    let delta = g.max_degree();
    let bound = general_bound(delta);
    let note = format!("floor(5(Δ+2)/2) with Δ={delta}");
    color_small_or_layered(g, config)?.with_bound(bound, note)
}

/// Colors a part whose maximum degree is at most 5: subcubic parts within
/// five colors, others within `3Δ`.
fn color_part(g: &Graph, config: &ColorConfig) -> Result<AvdCertificate, AvdError> {
    match g.max_degree() {
        0..=3 => avd_subcubic_with(g, config),
        d => ascend(g, 3 * d, config),
    }
}

fn color_small_or_layered(g: &Graph, config: &ColorConfig) -> Result<AvdCertificate, AvdError> {
    if g.max_degree() <= 5 {
        return color_part(g, config);
    }
    let layered = partition_p2(g)?;
    compose_parts(g, layered.partition.parts(), |_, sub| color_part(&sub.graph, config))
}

fn compose_parts<F>(g: &Graph, parts: &[Vec<EdgeId>], mut color: F) -> Result<AvdCertificate, AvdError>
where
    F: FnMut(usize, &Subgraph) -> Result<AvdCertificate, AvdError>,
{
    let mut colored = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        let sub = edge_induced(g, part)?;
        let cert = color(i, &sub)?;
        colored.push((sub, cert));
    }
    compose(g, &colored)
}

/// AVD coloring of a normal `r`-regular graph within `⌊(5r + 37)/3⌋` colors.
pub fn avd_color_regular(g: &Graph) -> Result<AvdCertificate, AvdError> {
    avd_color_regular_with(g, &ColorConfig::default())
}

pub fn avd_color_regular_with(g: &Graph, config: &ColorConfig) -> Result<AvdCertificate, AvdError> {
    if !g.is_normal() {
        return Err(AvdError::NotNormal);
    }
    let r = g.regular_degree().ok_or(AvdError::NotRegular)?;
    let bound = regular_bound(r);
    let note = format!("floor((5r+37)/3) with r={r}");
    if r <= 4 {
        return color_small_or_layered(g, config)?.with_bound(bound, note);
    }
    let grouped = partition_regular(g)?;
    let sizes = grouped.degree_bounds.clone();
    compose_parts(g, grouped.partition.parts(), |i, sub| match sizes[i] {
        3 => avd_subcubic_with(&sub.graph, config),
        _ => ascend(&sub.graph, 12, config),
    })?
    .with_bound(bound, note)
}
