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

//! Local search for a subgraph `H` with `Δ(H) ≤ 3`, `Δ(H̄) ≤ Δ − 2` and both
//! sides free of isolated edges.
//!
//! The search starts from three Vizing color classes and repeatedly applies
//! a [`Move`] that keeps the selection admissible while strictly decreasing
//! the potential `(i(H) + i(H̄), |E(H)|)` lexicographically. Moves come from
//! a fixed repertoire: drop or add the isolated edge itself, repair a vertex
//! that fails its type test, or swap selected and complement edges along an
//! alternating chain that ends at such a vertex.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use super::rules::{check_membership, is_member, Chain, ChainKind, Rules, VertexType};
use super::PartitionError;
use crate::graph::{io, EdgeId, EdgePartition, Format, Graph, Side, SubgraphSelection, Vertex};
use crate::vizing::{color_classes, misra_gries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveVariant {
    /// remove an isolated selected edge whose ends are both below `Δ − 1`
    DropIsolatedHEdge,
    /// add complement edges at a single vertex
    AddHbarEdges,
    /// remove selected edges at a single vertex
    DropHEdges,
    /// exchange selected and complement edges along an alternating chain
    ChainSwap,
}

/// A rewrite `H' = (H ∪ add_set) ∖ remove_set`, valid only against the
/// selection state it was derived from.
#[derive(Clone, Debug, Serialize)]
pub struct Move {
    pub variant: MoveVariant,
    pub add_set: Vec<EdgeId>,
    pub remove_set: Vec<EdgeId>,
    pub witness: String,
    pub potential_before: (usize, usize),
    pub potential_after: (usize, usize),
    /// repair candidates that failed validation before this one was accepted
    pub rejected_candidates: usize,
    #[serde(skip)]
    version: u64,
    #[serde(skip)]
    add_idx: Vec<usize>,
    #[serde(skip)]
    remove_idx: Vec<usize>,
}

impl Move {
    fn with_rejected(mut self, rejected: usize) -> Self {
        self.rejected_candidates = rejected;
        self
    }

    /// Selection version this move was computed against.
    pub fn version(&self) -> u64 {
        self.version
    }
}

/// Vertices reached from an isolated edge when every chain end had the
/// expected type.
#[derive(Clone, Debug, Serialize)]
pub struct ChainClosure {
    pub origin: Vertex,
    pub origin_edge: EdgeId,
    pub origin_side: String,
    /// type-I vertices reached
    pub v1_set: BTreeSet<Vertex>,
    /// type-II vertices reached
    pub v2_set: BTreeSet<Vertex>,
    /// violating chain ends whose repair candidates all failed validation
    pub rejected_candidates: usize,
}

#[derive(Clone, Debug)]
pub enum MoveSearch {
    Move(Move),
    ClosureExhausted(ChainClosure),
}

/// One applied move, as written to a trace.
#[derive(Clone, Debug, Serialize)]
pub struct MoveRecord {
    pub step: usize,
    pub variant: MoveVariant,
    pub add: Vec<EdgeId>,
    pub remove: Vec<EdgeId>,
    pub before: (usize, usize),
    pub after: (usize, usize),
    pub witness: String,
    pub rejected_candidates: usize,
}

impl MoveRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("move records serialize")
    }
}

/// Full state dump for a run that could not make progress.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub graph6: String,
    pub max_degree: usize,
    pub selected: Vec<EdgeId>,
    pub potential: (usize, usize),
    pub closure: ChainClosure,
    pub moves_applied: usize,
}

impl CounterexampleReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Selection formed by Misra–Gries color classes 1, 2 and 3.
pub fn initial_selection(g: &Graph) -> Result<SubgraphSelection<'_>, PartitionError> {
    precondition(g)?;
    let coloring = misra_gries(g);
    let classes = color_classes(g, &coloring, g.max_degree() + 1)
        .expect("Misra–Gries stays within Δ + 1 colors");
    let first_three: Vec<EdgeId> = classes.into_iter().take(3).flatten().collect();
    let sel = SubgraphSelection::from_edges(g, &first_three)?;
    let report = check_membership(g, &sel);
    if !report.is_member() {
        return Err(PartitionError::InitialSelectionNotMember(report));
    }
    Ok(sel)
}

fn precondition(g: &Graph) -> Result<(), PartitionError> {
    if !g.is_normal() {
        return Err(PartitionError::NotNormal);
    }
    if g.max_degree() < 6 {
        return Err(PartitionError::DegreeTooSmall {
            needed: 6,
            found: g.max_degree(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
struct Candidate {
    variant: MoveVariant,
    add: Vec<usize>,
    remove: Vec<usize>,
    witness: String,
}

/// Validates a candidate against the current state: the result must be
/// admissible and strictly lower in potential.
fn evaluate(sel: &SubgraphSelection<'_>, cand: &Candidate) -> Option<Move> {
    let g = sel.host();
    let mut next = sel.clone();
    for &e in &cand.add {
        next.insert(e);
    }
    for &e in &cand.remove {
        next.remove(e);
    }
    let touched: BTreeSet<usize> = cand.add.iter().chain(&cand.remove).copied().collect();
    let add_idx: Vec<usize> = touched
        .iter()
        .copied()
        .filter(|&e| next.contains(e) && !sel.contains(e))
        .collect();
    let remove_idx: Vec<usize> = touched
        .iter()
        .copied()
        .filter(|&e| !next.contains(e) && sel.contains(e))
        .collect();
    if add_idx.is_empty() && remove_idx.is_empty() {
        return None;
    }
    if !is_member(g, &next) || next.potential() >= sel.potential() {
        return None;
    }
    Some(Move {
        variant: cand.variant,
        add_set: add_idx.iter().map(|&e| g.edge(e)).collect(),
        remove_set: remove_idx.iter().map(|&e| g.edge(e)).collect(),
        witness: cand.witness.clone(),
        potential_before: sel.potential(),
        potential_after: next.potential(),
        rejected_candidates: 0,
        version: sel.version(),
        add_idx,
        remove_idx,
    })
}

/// An alternating chain from an origin: `ends[0]` is the origin and
/// `ends[i]` is where `chains[i - 1]` terminates.
struct ChainPath {
    chains: Vec<Chain>,
    ends: Vec<Vertex>,
}

impl ChainPath {
    fn empty(origin: Vertex) -> Self {
        ChainPath {
            chains: Vec::new(),
            ends: vec![origin],
        }
    }

    fn len(&self) -> usize {
        self.chains.len()
    }

    /// Edges added (complement chains) and removed (selected chains) by
    /// swapping the first `upto` chains.
    fn swap(&self, g: &Graph, upto: usize) -> (Vec<usize>, Vec<usize>) {
        let mut add = Vec::new();
        let mut remove = Vec::new();
        for chain in &self.chains[..upto] {
            let edges = chain.edge_indices(g);
            match chain.kind {
                ChainKind::Complement => add.extend(edges),
                ChainKind::Selected => remove.extend(edges),
            }
        }
        (add, remove)
    }

    fn describe(&self) -> String {
        let mut s = format!("{}", self.ends[0]);
        for c in &self.chains {
            let arrow = match c.kind {
                ChainKind::Selected => "=H=>",
                ChainKind::Complement => "=C=>",
            };
            let _ = write!(s, " {arrow} ");
            let verts: Vec<String> = c.vertices[1..].iter().map(|v| v.to_string()).collect();
            s.push_str(&verts.join("/"));
        }
        s
    }
}

fn edge(g: &Graph, a: Vertex, b: Vertex) -> usize {
    g.edge_index(a, b).expect("adjacent vertices share an edge")
}

fn local_variant(remove: &[usize], upto: usize) -> MoveVariant {
    if upto > 0 {
        MoveVariant::ChainSwap
    } else if remove.is_empty() {
        MoveVariant::AddHbarEdges
    } else {
        MoveVariant::DropHEdges
    }
}

fn build(path: &ChainPath, g: &Graph, upto: usize, extra_add: &[usize], extra_remove: &[usize], witness: String) -> Candidate {
    let (mut add, mut remove) = path.swap(g, upto);
    add.extend_from_slice(extra_add);
    remove.extend_from_slice(extra_remove);
    Candidate {
        variant: local_variant(&remove, upto),
        add,
        remove,
        witness,
    }
}

/// Repairs for a chain end `t` that should be type-II but has a selected
/// neighbor passing neither gate (4) nor (5).
fn type_ii_repairs(r: &Rules<'_, '_>, path: &ChainPath, type_ii_parity: usize) -> Vec<Candidate> {
    let g = r.g;
    let m = path.len();
    let t = path.ends[m];
    let Some(x) = r.type_ii_blocker(t) else {
        return Vec::new();
    };
    let xt = edge(g, x, t);
    let route = path.describe();
    let mut out = Vec::new();
    let on_path = (0..m).find(|&i| path.ends[i] == x && i % 2 == type_ii_parity);
    if let Some(i) = on_path {
        // x is an earlier type-II end: swap only up to x and cut t loose
        let z = r.other_neighbor(Side::Selected, t, x);
        let w = format!("type-II blocker {x} at {t} revisits the chain [{route}]");
        if let Some(z) = z.filter(|&z| r.sel.degree(z) == 1) {
            out.push(build(path, g, i, &[], &[xt, edge(g, t, z)], w.clone()));
        }
        out.push(build(path, g, i, &[], &[xt], w.clone()));
        out.push(build(path, g, m, &[], &[xt], w));
        return out;
    }
    let y = (r.sel.degree(x) == 2)
        .then(|| r.other_neighbor(Side::Selected, x, t))
        .flatten();
    let w = format!("type-II blocker {x} at {t} via [{route}]");
    match y {
        Some(y) if r.sel.degree(y) == 1 => {
            out.push(build(path, g, m, &[], &[xt, edge(g, x, y)], w.clone()));
        }
        _ if r.sel.degree(t) == 3 => {
            out.push(build(path, g, 0, &[], &[xt], w.clone()));
        }
        _ => {
            out.push(build(path, g, m, &[], &[xt], w.clone()));
        }
    }
    out.push(build(path, g, 0, &[], &[xt], w.clone()));
    out.push(build(path, g, m, &[], &[xt], w));
    out
}

/// Repairs for a chain end `t` that should be type-I but has a complement
/// neighbor passing none of gates (1)–(3).
fn type_i_repairs(r: &Rules<'_, '_>, path: &ChainPath) -> Vec<Candidate> {
    let g = r.g;
    let m = path.len();
    let t = path.ends[m];
    let Some(x) = r.type_i_blocker(t) else {
        return Vec::new();
    };
    let xt = edge(g, x, t);
    let w = format!("type-I blocker {x} at {t} via [{}]", path.describe());
    let mut out = Vec::new();
    let y = (r.sel.degree(x) <= 1 && r.sel.complement_degree(x) == 2)
        .then(|| r.other_neighbor(Side::Complement, x, t))
        .flatten();
    if let Some(y) = y.filter(|&y| r.sel.complement_degree(y) == 1) {
        out.push(build(path, g, m, &[xt, edge(g, x, y)], &[], w.clone()));
    }
    out.push(build(path, g, m, &[xt], &[], w));
    out
}

/// Orients an isolated edge so that the first vertex has the larger degree,
/// lower label on ties.
fn orient(g: &Graph, e: EdgeId) -> (Vertex, Vertex) {
    let (a, b) = e.endpoints();
    if g.degree(b) > g.degree(a) {
        (b, a)
    } else {
        (a, b)
    }
}

enum Outcome {
    Found(Move),
    Closed(ChainClosure),
}

fn search_from(sel: &SubgraphSelection<'_>, side: Side, edge_idx: usize) -> Outcome {
    let r = Rules::new(sel);
    let g = r.g;
    let e = g.edge(edge_idx);
    let (origin, _) = orient(g, e);
    let mut rejected = 0;
    let origin_type = match side {
        Side::Selected => VertexType::TypeI,
        Side::Complement => VertexType::TypeII,
    };

    let direct = match side {
        Side::Selected if g.degree(origin) + 2 <= r.delta => Some(Candidate {
            variant: MoveVariant::DropIsolatedHEdge,
            add: vec![],
            remove: vec![edge_idx],
            witness: format!("isolated selected edge {e} with d({origin}) <= Δ-2"),
        }),
        Side::Complement if sel.degree(origin) <= 2 => Some(Candidate {
            variant: MoveVariant::AddHbarEdges,
            add: vec![edge_idx],
            remove: vec![],
            witness: format!("isolated complement edge {e} with d_H({origin}) <= 2"),
        }),
        _ => None,
    };
    let closure = |v1, v2, rejected| ChainClosure {
        origin,
        origin_edge: e,
        origin_side: format!("{side:?}"),
        v1_set: v1,
        v2_set: v2,
        rejected_candidates: rejected,
    };
    if let Some(c) = direct {
        if let Some(mv) = evaluate(sel, &c) {
            return Outcome::Found(mv.with_rejected(rejected));
        }
        rejected += 1;
    }

    // origin must pass its own type test before chains are grown
    let start = ChainPath::empty(origin);
    if r.classify(origin) != origin_type {
        let cands = match side {
            Side::Selected => type_i_repairs(&r, &start),
            Side::Complement => type_ii_repairs(&r, &start, 0),
        };
        for c in &cands {
            if let Some(mv) = evaluate(sel, c) {
                return Outcome::Found(mv.with_rejected(rejected));
            }
            rejected += 1;
        }
        return Outcome::Closed(closure(BTreeSet::new(), BTreeSet::new(), rejected));
    }
    if side == Side::Selected {
        debug_assert_eq!(g.degree(origin) + 1, r.delta);
    } else {
        debug_assert_eq!(sel.degree(origin), 3);
    }

    // Breadth-first growth over chain ends; each end is expanded once.
    let type_ii_parity = match side {
        Side::Selected => 1,
        Side::Complement => 0,
    };
    let mut v1 = BTreeSet::new();
    let mut v2 = BTreeSet::new();
    match origin_type {
        VertexType::TypeI => v1.insert(origin),
        _ => v2.insert(origin),
    };
    let mut parent: HashMap<Vertex, Chain> = HashMap::new();
    let mut queue = VecDeque::from([origin]);
    while let Some(t) = queue.pop_front() {
        let kind = if v1.contains(&t) {
            ChainKind::Complement
        } else {
            ChainKind::Selected
        };
        for chain in r.chains(t, kind) {
            let end = chain.end();
            if end == origin || parent.contains_key(&end) {
                continue;
            }
            parent.insert(end, chain);
            let expected = match kind {
                ChainKind::Complement => VertexType::TypeII,
                ChainKind::Selected => VertexType::TypeI,
            };
            if r.classify(end) == expected {
                match expected {
                    VertexType::TypeI => v1.insert(end),
                    _ => v2.insert(end),
                };
                queue.push_back(end);
                continue;
            }
            let path = trace_back(&parent, origin, end);
            let cands = match expected {
                VertexType::TypeI => type_i_repairs(&r, &path),
                _ => type_ii_repairs(&r, &path, type_ii_parity),
            };
            for c in &cands {
                if let Some(mv) = evaluate(sel, c) {
                    return Outcome::Found(mv.with_rejected(rejected));
                }
                rejected += 1;
            }
        }
    }
    Outcome::Closed(closure(v1, v2, rejected))
}

fn trace_back(parent: &HashMap<Vertex, Chain>, origin: Vertex, end: Vertex) -> ChainPath {
    let mut chains = Vec::new();
    let mut at = end;
    while at != origin {
        let c = parent[&at].clone();
        at = c.start();
        chains.push(c);
    }
    chains.reverse();
    let mut ends = vec![origin];
    ends.extend(chains.iter().map(Chain::end));
    ChainPath { chains, ends }
}

/// Finds a potential-decreasing move, or reports the closure reached from
/// the first isolated edge when none exists.
///
/// Isolated selected edges are tried before isolated complement edges, each
/// in edge order.
pub fn find_move(sel: &SubgraphSelection<'_>) -> Result<MoveSearch, PartitionError> {
    let g = sel.host();
    precondition(g)?;
    if !is_member(g, sel) {
        return Err(PartitionError::NotAdmissible(check_membership(g, sel)));
    }
    if sel.isolated_total() == 0 {
        return Err(PartitionError::NothingToImprove);
    }
    let mut first_closure = None;
    for side in [Side::Selected, Side::Complement] {
        for &e in sel.isolated(side) {
            match search_from(sel, side, e) {
                Outcome::Found(mv) => return Ok(MoveSearch::Move(mv)),
                Outcome::Closed(c) => {
                    first_closure.get_or_insert(c);
                }
            }
        }
    }
    Ok(MoveSearch::ClosureExhausted(
        first_closure.expect("at least one isolated edge was examined"),
    ))
}

/// Applies a move produced by [`find_move`] on this exact selection state.
pub fn apply_move(sel: &mut SubgraphSelection<'_>, mv: &Move) -> Result<(), PartitionError> {
    if sel.version() != mv.version {
        return Err(PartitionError::StaleMove {
            expected: mv.version,
            found: sel.version(),
        });
    }
    for &e in &mv.add_idx {
        sel.insert(e);
    }
    for &e in &mv.remove_idx {
        sel.remove(e);
    }
    debug_assert_eq!(sel.potential(), mv.potential_after);
    Ok(())
}

/// Result of the local search: the partition `[H, H̄]` plus the move log.
#[derive(Clone, Debug)]
pub struct SplitOutcome {
    pub partition: EdgePartition,
    pub moves: Vec<MoveRecord>,
    pub initial_potential: (usize, usize),
}

impl SplitOutcome {
    pub fn selected(&self) -> &[EdgeId] {
        &self.partition.parts()[0]
    }

    pub fn complement(&self) -> &[EdgeId] {
        &self.partition.parts()[1]
    }
}

/// Runs the local search from an arbitrary admissible selection until the
/// potential's first component reaches zero; returns the applied moves.
pub fn improve(sel: &mut SubgraphSelection<'_>) -> Result<Vec<MoveRecord>, PartitionError> {
    improve_observed(sel, &mut |_: &MoveRecord, _: &SubgraphSelection<'_>| {})
}

fn improve_observed<F>(sel: &mut SubgraphSelection<'_>, observe: &mut F) -> Result<Vec<MoveRecord>, PartitionError>
where
    F: FnMut(&MoveRecord, &SubgraphSelection<'_>),
{
    let g = sel.host();
    let cap = (sel.potential().0 + 1) * (g.edge_count() + 1) + 1;
    let mut moves = Vec::new();
    while sel.isolated_total() > 0 {
        if moves.len() >= cap {
            return Err(PartitionError::IterationCap(cap));
        }
        match find_move(sel)? {
            MoveSearch::Move(mv) => {
                apply_move(sel, &mv)?;
                let record = MoveRecord {
                    step: moves.len(),
                    variant: mv.variant,
                    add: mv.add_set,
                    remove: mv.remove_set,
                    before: mv.potential_before,
                    after: mv.potential_after,
                    witness: mv.witness,
                    rejected_candidates: mv.rejected_candidates,
                };
                observe(&record, sel);
                moves.push(record);
            }
            MoveSearch::ClosureExhausted(closure) => {
                let graph6 = String::from_utf8(io::emit_graph(g, Format::Graph6))
                    .expect("graph6 is ASCII")
                    .trim_end()
                    .to_string();
                return Err(PartitionError::Counterexample(Box::new(CounterexampleReport {
                    graph6,
                    max_degree: g.max_degree(),
                    selected: sel.selected_edges(),
                    potential: sel.potential(),
                    closure,
                    moves_applied: moves.len(),
                })));
            }
        }
    }
    Ok(moves)
}

/// Splits a normal graph with `Δ ≥ 6` into `H` and `H̄`.
pub fn partition_p1(g: &Graph) -> Result<SplitOutcome, PartitionError> {
    partition_p1_observed(g, |_, _| {})
}

/// Like [`partition_p1`], calling `observe` after every applied move with
/// the record and the updated selection.
pub fn partition_p1_observed<F>(g: &Graph, mut observe: F) -> Result<SplitOutcome, PartitionError>
where
    F: FnMut(&MoveRecord, &SubgraphSelection<'_>),
{
    let mut sel = initial_selection(g)?;
    let initial_potential = sel.potential();
    let moves = improve_observed(&mut sel, &mut observe)?;
    let partition = EdgePartition::new(g, vec![sel.selected_edges(), sel.complement_edges()])?;
    Ok(SplitOutcome {
        partition,
        moves,
        initial_potential,
    })
}
