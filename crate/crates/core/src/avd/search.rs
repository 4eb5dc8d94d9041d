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


//! Exact backtracking search for AVD edge colorings under a color budget.

use rand::seq::SliceRandom;

use crate::graph::generate::rng;
use crate::graph::{Graph, Vertex};
use crate::vizing::{Color, EdgeColoring};

/// Largest budget the bitmask search supports.
pub const MAX_BUDGET: usize = 64;

/// Knobs for one search run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchConfig {
    /// stop after this many search nodes; `None` searches to completion
    pub node_cap: Option<u64>,
    /// shuffles the root and neighbor order of the edge ordering
    pub order_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Colored(EdgeColoring),
    Unsatisfiable,
    CapReached,
}

/// Searches for an AVD edge coloring of `g` with colors `1..=budget`.
///
/// Components are searched one after another since the AVD condition never
/// crosses a component boundary. Edges are ordered by a depth-first walk from
/// the lowest vertex, listing each vertex's edges when it is first visited.
/// Colors are tried in ascending order, and a color may exceed the largest
/// one used so far by at most one. After every assignment the search rejects
/// states where an uncolored edge has no color left, or where two adjacent
/// vertices of equal degree are fully colored with the same set.
///
/// # Panics
/// If `budget` exceeds [`MAX_BUDGET`].
pub fn search(g: &Graph, budget: usize, config: &SearchConfig) -> SearchOutcome {
    assert!(budget <= MAX_BUDGET, "budget {budget} above {MAX_BUDGET}");
    let mut solver = Solver::new(g, budget, config.node_cap);
    for order in component_orders(g, config.order_seed) {
        solver.max_used = 0;
        match solver.extend(&order, 0) {
            Ok(true) => {}
            Ok(false) => return SearchOutcome::Unsatisfiable,
            Err(CapHit) => return SearchOutcome::CapReached,
        }
    }
    SearchOutcome::Colored(EdgeColoring::new(solver.colors))
}

/// Per-component edge orders.
fn component_orders(g: &Graph, seed: Option<u64>) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut rng = seed.map(rng);
    let mut roots: Vec<Vertex> = g.vertices().collect();
    if let Some(r) = rng.as_mut() {
        roots.shuffle(r);
    }
    let mut seen = vec![false; n];
    let mut placed = vec![false; g.edge_count()];
    let mut orders = Vec::new();
    for root in roots {
        if seen[root] || g.degree(root) == 0 {
            continue;
        }
        let mut order = Vec::new();
        let mut stack = vec![(root, neighbor_order(g, root, &mut rng), 0)];
        seen[root] = true;
        list_edges(g, root, &mut placed, &mut order);
        while let Some((_, nbrs, i)) = stack.last_mut() {
            if *i == nbrs.len() {
                stack.pop();
                continue;
            }
            let w = nbrs[*i];
            *i += 1;
            if !seen[w] {
                seen[w] = true;
                list_edges(g, w, &mut placed, &mut order);
                let next = neighbor_order(g, w, &mut rng);
                stack.push((w, next, 0));
            }
        }
        orders.push(order);
    }
    orders
}

fn neighbor_order(g: &Graph, v: Vertex, rng: &mut Option<rand_chacha::ChaCha8Rng>) -> Vec<Vertex> {
    let mut nbrs: Vec<Vertex> = g.neighbors(v).collect();
    if let Some(r) = rng.as_mut() {
        nbrs.shuffle(r);
    }
    nbrs
}

fn list_edges(g: &Graph, v: Vertex, placed: &mut [bool], order: &mut Vec<usize>) {
    for &(_, e) in g.incident(v) {
        if !placed[e] {
            placed[e] = true;
            order.push(e);
        }
    }
}

struct CapHit;

struct Solver<'g> {
    g: &'g Graph,
    full: u64,
    budget: usize,
    colors: Vec<Color>,
    used: Vec<u64>,
    uncolored: Vec<usize>,
    /// neighbors of equal degree
    twins: Vec<Vec<Vertex>>,
    max_used: usize,
    nodes: u64,
    cap: Option<u64>,
}

impl<'g> Solver<'g> {
    fn new(g: &'g Graph, budget: usize, cap: Option<u64>) -> Self {
        let twins = g
            .vertices()
            .map(|v| g.neighbors(v).filter(|&w| g.degree(w) == g.degree(v)).collect())
            .collect();
        Solver {
            g,
            full: if budget == 64 { u64::MAX } else { (1u64 << budget) - 1 },
            budget,
            colors: vec![0; g.edge_count()],
            used: vec![0; g.vertex_count()],
            uncolored: g.vertices().map(|v| g.degree(v)).collect(),
            twins,
            max_used: 0,
            nodes: 0,
            cap,
        }
    }

    fn extend(&mut self, order: &[usize], i: usize) -> Result<bool, CapHit> {
        let Some(&e) = order.get(i) else {
            return Ok(true);
        };
        self.nodes += 1;
        if self.cap.is_some_and(|c| self.nodes > c) {
            return Err(CapHit);
        }
        let (a, b) = self.g.edge(e).endpoints();
        let free = !(self.used[a] | self.used[b]) & self.full;
        let limit = self.budget.min(self.max_used + 1);
        for c in 1..=limit {
            let bit = 1u64 << (c - 1);
            if free & bit == 0 {
                continue;
            }
            self.assign(e, a, b, c as Color, bit);
            if self.consistent(a) && self.consistent(b) {
                let before = self.max_used;
                self.max_used = before.max(c);
                if self.extend(order, i + 1)? {
                    return Ok(true);
                }
                self.max_used = before;
            }
            self.unassign(e, a, b, bit);
        }
        Ok(false)
    }

    fn assign(&mut self, e: usize, a: Vertex, b: Vertex, c: Color, bit: u64) {
        self.colors[e] = c;
        self.used[a] |= bit;
        self.used[b] |= bit;
        self.uncolored[a] -= 1;
        self.uncolored[b] -= 1;
    }

    fn unassign(&mut self, e: usize, a: Vertex, b: Vertex, bit: u64) {
        self.colors[e] = 0;
        self.used[a] &= !bit;
        self.used[b] &= !bit;
        self.uncolored[a] += 1;
        self.uncolored[b] += 1;
    }

    fn consistent(&self, x: Vertex) -> bool {
        if self.uncolored[x] == 0 {
            let set = self.used[x];
            if self.twins[x].iter().any(|&y| self.uncolored[y] == 0 && self.used[y] == set) {
                return false;
            }
        }
        self.g.incident(x).iter().all(|&(y, f)| {
            self.colors[f] != 0 || (self.used[x] | self.used[y]) & self.full != self.full
        })
    }
}
