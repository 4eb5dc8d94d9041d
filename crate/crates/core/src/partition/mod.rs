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

//! Edge partitions into normal pieces of small maximum degree.

use thiserror::Error;

use crate::graph::GraphError;

mod engine;
mod recursive;
mod regular;
mod rules;

pub use engine::{
    apply_move, find_move, improve, initial_selection, partition_p1, partition_p1_observed, ChainClosure,
    CounterexampleReport, Move, MoveRecord, MoveSearch, MoveVariant, SplitOutcome,
};
pub use recursive::{partition_p2, peel_bound, LayeredPartition};
pub use regular::{partition_regular, RegularCase, RegularPartition};
pub use rules::{
    both_types, check_membership, classify_vertex, enumerate_chains, Chain, ChainKind,
    MembershipCondition, MembershipReport, MembershipViolation, VertexType,
};

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("graph is not normal (it has an isolated vertex or an isolated edge)")]
    NotNormal,
    #[error("maximum degree {found} is below the required {needed}")]
    DegreeTooSmall { needed: usize, found: usize },
    #[error("graph is not regular")]
    NotRegular,
    #[error("initial selection is not admissible: {0:?}")]
    InitialSelectionNotMember(MembershipReport),
    #[error("selection is not admissible: {0:?}")]
    NotAdmissible(MembershipReport),
    #[error("selection already has no isolated edges")]
    NothingToImprove,
    #[error("stale move: computed at version {expected}, selection is at {found}")]
    StaleMove { expected: u64, found: u64 },
    #[error("move limit {0} exceeded without reaching zero potential")]
    IterationCap(usize),
    #[error("no improving move exists from {origin_edge} (closure of {size} vertices); possible counterexample", origin_edge = .0.closure.origin_edge, size = .0.closure.v1_set.len() + .0.closure.v2_set.len())]
    Counterexample(Box<CounterexampleReport>),
    #[error("class grouping produced an invalid part {part}: {reason}")]
    InvalidGrouping { part: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
