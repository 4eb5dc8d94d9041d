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


//! Isomorphism-free enumeration of small connected graphs of bounded degree.

#![allow(dead_code)]

use std::collections::BTreeSet;

use avd_core::graph::Graph;

/// Adjacency as bitmasks, at most 16 vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Small {
    pub adj: Vec<u16>,
}

impl Small {
    fn n(&self) -> usize {
        self.adj.len()
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let edges = (0..n).flat_map(|u| ((u + 1)..n).filter(move |&v| self.adj[u] >> v & 1 == 1).map(move |v| (u, v)));
        Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
    }

    /// Equitable refinement of a vertex coloring, label independent.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        loop {
            let cells = colors.iter().collect::<BTreeSet<_>>().len();
            let sigs: Vec<(usize, Vec<usize>)> = (0..self.n())
                .map(|v| {
                    let mut s: Vec<usize> = (0..self.n()).filter(|&w| self.adj[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let mut sorted = sigs.clone();
            sorted.sort();
            sorted.dedup();
            colors = sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect();
            if sorted.len() == cells {
                return colors;
            }
        }
    }

    /// Upper-triangle adjacency bits under the ordering given by a
    /// discrete coloring.
    fn code(&self, colors: &[usize]) -> u128 {
        let n = self.n();
        let mut pos = vec![0; n];
        for v in 0..n {
            pos[colors[v]] = v;
        }
        let mut code = 0u128;
        for i in 0..n {
            for j in (i + 1)..n {
                code = code << 1 | (self.adj[pos[i]] >> pos[j] & 1) as u128;
            }
        }
        code
    }

    fn search(&self, colors: Vec<usize>) -> u128 {
        let colors = self.refine(colors);
        let n = self.n();
        let mut counts = vec![0; n];
        for &c in &colors {
            counts[c] += 1;
        }
        let Some(cell) = (0..n).find(|&c| counts[c] > 1) else {
            return self.code(&colors);
        };
        (0..n)
            .filter(|&v| colors[v] == cell)
            .map(|v| {
                // v goes first within its cell
                let split: Vec<usize> = colors
                    .iter()
                    .enumerate()
                    .map(|(w, &c)| 2 * c + usize::from(c == cell && w != v))
                    .collect();
                self.search(split)
            })
            .min()
            .unwrap()
    }

    /// Isomorphism invariant: equal iff the graphs are isomorphic.
    pub fn canonical(&self) -> (usize, u128) {
        let degrees: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        (self.n(), self.search(degrees))
    }
}

/// All connected graphs with `Δ ≤ max_degree` on `1..=max_n` vertices,
/// one per isomorphism class, grouped by vertex count.
pub fn connected_bounded_degree(max_n: usize, max_degree: usize) -> Vec<Vec<Small>> {
    let mut levels = vec![vec![Small { adj: vec![0] }]];
    for n in 1..max_n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &levels[n - 1] {
            let open: Vec<usize> = (0..n).filter(|&v| g.degree(v) < max_degree).collect();
            for mask in 1u32..(1 << open.len()) {
                if mask.count_ones() as usize > max_degree {
                    continue;
                }
                let mut adj = g.adj.clone();
                let mut new = 0u16;
                for (i, &v) in open.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        adj[v] |= 1 << n;
                        new |= 1 << v;
                    }
                }
                adj.push(new);
                let h = Small { adj };
                if seen.insert(h.canonical()) {
                    next.push(h);
                }
            }
        }
        levels.push(next);
    }
    levels
}
