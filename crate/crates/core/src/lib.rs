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

//! Adjacent vertex distinguishing (AVD) edge colorings of normal graphs.
//!
//! The pipeline splits a graph into edge-disjoint normal pieces of small
//! maximum degree, colors each piece with an exact budgeted search, and
//! glues the pieces together on disjoint palettes:
//!
//! * [`partition::partition_p1`] finds a subgraph `H` with `Δ(H) ≤ 3`,
//!   `Δ(H̄) ≤ Δ − 2` and both sides normal, by local search over a
//!   lexicographic potential;
//! * [`partition::partition_p2`] peels such subgraphs recursively;
//! * [`avd::avd_color`] colors the pieces and composes them, staying within
//!   `⌊5(Δ + 2)/2⌋` colors;
//! * [`avd::avd_color_regular`] does the same for `r`-regular graphs within
//!   `⌊(5r + 37)/3⌋` colors using groups of Vizing color classes.
//!
//! Everything produced is checked by the independent routines in [`verify`].

pub mod avd;
pub mod cli;
pub mod graph;
pub mod partition;
pub mod verify;
pub mod vizing;

pub use graph::{EdgeId, Graph, GraphError, Vertex};
