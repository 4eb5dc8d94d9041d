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

//! Proper edge colorings with at most `Δ + 1` colors (Misra–Gries) and the
//! [`EdgeColoring`] type shared by the rest of the crate.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};

/// Colors are positive integers; `0` never appears in a finished coloring.
pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VizingError {
    #[error("cannot pad {palette} color classes down to {padded_to}")]
    PaddingTooSmall { palette: usize, padded_to: usize },
}

/// A color per edge, indexed like the host's edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        EdgeColoring { colors }
    }

    pub fn color(&self, edge: usize) -> Color {
        self.colors[edge]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn palette(&self) -> BTreeSet<Color> {
        self.colors.iter().copied().collect()
    }

    /// Number of distinct colors in use.
    pub fn palette_size(&self) -> usize {
        self.palette().len()
    }

    /// `C_φ(v)`, the colors on edges at `v`.
    pub fn vertex_colors(&self, g: &Graph, v: Vertex) -> BTreeSet<Color> {
        g.incident(v).iter().map(|&(_, e)| self.colors[e]).collect()
    }

    /// Renumbers the palette onto `1..=k` preserving color order.
    pub fn compacted(&self) -> EdgeColoring {
        let palette: Vec<Color> = self.palette().into_iter().collect();
        EdgeColoring {
            colors: self
                .colors
                .iter()
                .map(|c| palette.binary_search(c).unwrap() as Color + 1)
                .collect(),
        }
    }
}

/// Misra–Gries edge coloring with at most `Δ + 1` colors.
///
/// Edges are processed in index order. Fans grow through the lowest-index
/// eligible neighbor and free colors are always the smallest available, so
/// the result depends only on the labeled graph.
pub fn misra_gries(g: &Graph) -> EdgeColoring {
    let palette = g.max_degree() + 1;
    let mut mg = MisraGries {
        g,
        colors: vec![0; g.edge_count()],
        // at[v][c] = edge at v with color c
        at: vec![vec![None; palette + 1]; g.vertex_count()],
        palette,
    };
    for e in 0..g.edge_count() {
        mg.color_edge(e);
    }
    debug_assert!(mg.colors.iter().all(|&c| c != 0));
    EdgeColoring::new(mg.colors)
}

struct MisraGries<'a> {
    g: &'a Graph,
    colors: Vec<Color>,
    at: Vec<Vec<Option<usize>>>,
    palette: usize,
}

impl MisraGries<'_> {
    fn is_free(&self, v: Vertex, c: Color) -> bool {
        self.at[v][c as usize].is_none()
    }

    fn free_color(&self, v: Vertex) -> Color {
        (1..=self.palette as Color)
            .find(|&c| self.is_free(v, c))
            .expect("a vertex of degree at most Δ always misses one of Δ + 1 colors")
    }

    fn set(&mut self, e: usize, c: Color) {
        let (a, b) = self.g.edge(e).endpoints();
        let old = self.colors[e];
        if old != 0 {
            self.at[a][old as usize] = None;
            self.at[b][old as usize] = None;
        }
        self.colors[e] = c;
        if c != 0 {
            self.at[a][c as usize] = Some(e);
            self.at[b][c as usize] = Some(e);
        }
    }

    fn color_edge(&mut self, e: usize) {
        let (u, v) = self.g.edge(e).endpoints();
        // maximal fan at u starting with the uncolored edge uv
        let mut fan: Vec<(Vertex, usize)> = vec![(v, e)];
        let mut in_fan = vec![false; self.g.vertex_count()];
        in_fan[v] = true;
        loop {
            let last = fan.last().unwrap().0;
            let next = self.g.incident(u).iter().copied().find(|&(w, f)| {
                !in_fan[w] && self.colors[f] != 0 && self.is_free(last, self.colors[f])
            });
            match next {
                Some((w, f)) => {
                    in_fan[w] = true;
                    fan.push((w, f));
                }
                None => break,
            }
        }
        let c = self.free_color(u);
        let d = self.free_color(fan.last().unwrap().0);
        if c != d {
            self.invert_path(u, c, d);
        }
        let w = fan
            .iter()
            .position(|&(x, _)| self.is_free(x, d))
            .expect("the last fan vertex keeps d free after the inversion");
        for i in 0..w {
            let shifted = self.colors[fan[i + 1].1];
            let next_edge = fan[i + 1].1;
            self.set(next_edge, 0);
            self.set(fan[i].1, shifted);
        }
        self.set(fan[w].1, d);
    }

    /// Swaps `c` and `d` along the maximal path from `u` whose first edge has
    /// color `d` (`c` is free at `u`).
    fn invert_path(&mut self, u: Vertex, c: Color, d: Color) {
        let mut path = Vec::new();
        let mut x = u;
        let mut want = d;
        while let Some(f) = self.at[x][want as usize] {
            path.push(f);
            x = self.g.edge(f).other(x);
            want = if want == d { c } else { d };
        }
        for &f in &path {
            self.set(f, 0);
        }
        for (i, &f) in path.iter().enumerate() {
            self.set(f, if i % 2 == 0 { c } else { d });
        }
    }
}

/// Color class `i` (1-based color `i`) at position `i - 1`, padded with
/// empty classes up to `padded_to`.
///
/// The coloring's palette must be `1..=k` for some `k <= padded_to`.
pub fn color_classes(
    g: &Graph,
    coloring: &EdgeColoring,
    padded_to: usize,
) -> Result<Vec<Vec<EdgeId>>, VizingError> {
    let top = coloring.colors().iter().copied().max().unwrap_or(0) as usize;
    if top > padded_to {
        return Err(VizingError::PaddingTooSmall {
            palette: top,
            padded_to,
        });
    }
    let mut classes = vec![Vec::new(); padded_to];
    for (e, &c) in coloring.colors().iter().enumerate() {
        classes[c as usize - 1].push(g.edge(e));
    }
    Ok(classes)
}
