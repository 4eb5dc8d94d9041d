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


//! Graph generators shared by the integration tests.

#![allow(dead_code)]

use avd_core::graph::generate::{gnp, random_regular, rng};
use avd_core::graph::{EdgeId, Graph};
use rand::seq::SliceRandom;
use rand::Rng;

/// A normal graph with `Δ ≥ min_delta`: a random regular graph of degree
/// `deg` on `n` vertices with up to `n` random edges deleted and any
/// resulting isolated edges or vertices stripped. Retries on failure.
pub fn thinned_regular(seed: u64, n: usize, deg: usize, min_delta: usize) -> Graph {
    let mut r = rng(seed);
    for attempt in 0.. {
        let n = if n * deg % 2 == 1 { n + 1 } else { n };
        let base = random_regular(n, deg, seed.wrapping_mul(31).wrapping_add(attempt)).unwrap();
        let mut keep: Vec<EdgeId> = base.edges().to_vec();
        keep.shuffle(&mut r);
        let drop = r.gen_range(0..=n);
        keep.drain(..drop.min(keep.len()));
        if let Some(g) = normalize(n, &keep) {
            if g.max_degree() >= min_delta {
                return g;
            }
        }
    }
    unreachable!()
}

/// Random normal graph from `G(n, p)`, retried until `Δ` lands in `range`.
pub fn normal_gnp(seed: u64, n: usize, p: f64, range: std::ops::RangeInclusive<usize>) -> Graph {
    for attempt in 0u64.. {
        let g = gnp(n, p, seed.wrapping_mul(1_000_003).wrapping_add(attempt)).unwrap();
        if let Some(h) = normalize(n, g.edges()) {
            if range.contains(&h.max_degree()) {
                return h;
            }
        }
    }
    unreachable!()
}

/// Random normal graph from `G(n, p)` with `Δ` forced into `range`: edges
/// at vertices above the upper end are deleted at random before the graph
/// is normalized. Retries until the lower end is met.
pub fn trimmed_gnp(seed: u64, n: usize, p: f64, range: std::ops::RangeInclusive<usize>) -> Graph {
    let mut r = rng(seed);
    for attempt in 0u64.. {
        let g = gnp(n, p, seed.wrapping_mul(1_000_003).wrapping_add(attempt)).unwrap();
        let mut edges: Vec<EdgeId> = g.edges().to_vec();
        edges.shuffle(&mut r);
        let mut degree = vec![0; n];
        let kept: Vec<EdgeId> = edges
            .into_iter()
            .filter(|e| {
                let ok = degree[e.low()] < *range.end() && degree[e.high()] < *range.end();
                if ok {
                    degree[e.low()] += 1;
                    degree[e.high()] += 1;
                }
                ok
            })
            .collect();
        if let Some(h) = normalize(n, &kept) {
            if range.contains(&h.max_degree()) {
                return h;
            }
        }
    }
    unreachable!()
}

/// Drops isolated edges and isolated vertices, relabelling densely.
/// `None` when nothing is left.
pub fn normalize(n: usize, edges: &[EdgeId]) -> Option<Graph> {
    let g = Graph::from_edges(n, edges.iter().map(|e| e.endpoints())).ok()?;
    let kept: Vec<EdgeId> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| g.degree(e.low()) > 1 || g.degree(e.high()) > 1)
        .collect();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for e in &kept {
        for v in [e.low(), e.high()] {
            if label[v] == usize::MAX {
                label[v] = next;
                next += 1;
            }
        }
    }
    if kept.is_empty() {
        return None;
    }
    let h = Graph::from_edges(next, kept.iter().map(|e| (label[e.low()], label[e.high()]))).ok()?;
    h.is_normal().then_some(h)
}
pub mod enumerate;
