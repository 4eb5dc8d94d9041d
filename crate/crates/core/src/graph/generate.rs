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

//! Deterministic graph generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use super::{EdgeId, Graph, GraphError, Vertex};

/// Whole-sample retry budget for [`random_regular`].
pub const REGULAR_RETRY_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub enum GraphKind {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Petersen,
    RandomRegular { n: usize, r: usize, seed: u64 },
    Gnp { n: usize, p: f64, seed: u64 },
}

pub fn generate(kind: &GraphKind) -> Result<Graph, GraphError> {
    match *kind {
        GraphKind::Cycle(n) => {
            if n < 3 {
                return Err(GraphError::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
            }
            Ok(cycle(n))
        }
        GraphKind::Path(n) => Ok(path(n)),
        GraphKind::Complete(n) => Ok(complete(n)),
        GraphKind::Petersen => Ok(petersen()),
        GraphKind::RandomRegular { n, r, seed } => random_regular(n, r, seed),
        GraphKind::Gnp { n, p, seed } => gnp(n, p, seed),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

/// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).unwrap()
}

/// Erdős–Rényi G(n, p).
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameter(format!("edge probability {p} not in [0, 1]")));
    }
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Uniform-ish simple `r`-regular graph from the pairing model.
///
/// Points are matched one random pair at a time, redrawing any pair that
/// would close a loop or repeat an edge; a sample that runs out of legal
/// pairs is discarded and counts against [`REGULAR_RETRY_BUDGET`].
pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<Graph, GraphError> {
    if !(n * r).is_multiple_of(2) {
        return Err(GraphError::InvalidParameter(format!("n*r must be even (n = {n}, r = {r})")));
    }
    if r >= n && n > 0 {
        return Err(GraphError::InvalidParameter(format!("degree {r} needs more than {n} vertices")));
    }
    let mut rng = rng(seed);
    for _ in 0..REGULAR_RETRY_BUDGET {
        if let Some(edges) = pairing_attempt(n, r, &mut rng) {
            return Graph::from_edges(n, edges);
        }
    }
    Err(GraphError::RetryBudgetExhausted(REGULAR_RETRY_BUDGET))
}

fn pairing_attempt(n: usize, r: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(Vertex, Vertex)>> {
    let mut points: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
    points.shuffle(rng);
    let mut seen: HashSet<EdgeId> = HashSet::new();
    let mut edges = Vec::with_capacity(n * r / 2);
    while !points.is_empty() {
        let mut placed = false;
        // a handful of random draws, then an exhaustive scan for any legal pair
        for _ in 0..32 {
            let i = rng.gen_range(0..points.len());
            let j = rng.gen_range(0..points.len());
            if let Some(e) = legal(points[i], points[j], &seen) {
                take_pair(&mut points, i, j);
                seen.insert(e);
                edges.push(e.endpoints());
                placed = true;
                break;
            }
        }
        if !placed {
            let found = (0..points.len()).find_map(|i| {
                (i + 1..points.len()).find_map(|j| legal(points[i], points[j], &seen).map(|e| (i, j, e)))
            });
            let (i, j, e) = found?;
            take_pair(&mut points, i, j);
            seen.insert(e);
            edges.push(e.endpoints());
        }
    }
    Some(edges)
}

fn legal(a: Vertex, b: Vertex, seen: &HashSet<EdgeId>) -> Option<EdgeId> {
    EdgeId::new(a, b).filter(|e| !seen.contains(e))
}

fn take_pair(points: &mut Vec<Vertex>, i: usize, j: usize) {
    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
    points.swap_remove(hi);
    points.swap_remove(lo);
}

/// Shortest cycle length, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in g.vertices() {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        let mut parent = vec![usize::MAX; g.vertex_count()];
        let mut queue = std::collections::VecDeque::from([s]);
        dist[s] = 0;
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}
