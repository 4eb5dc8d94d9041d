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

use serde::Serialize;

use crate::graph::{edge_induced, EdgeId, EdgePartition, Graph};
use crate::vizing::{color_classes, misra_gries};

use super::PartitionError;

/// Which block layout applies, by `r mod 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RegularCase {
    /// `r ≡ 2`: all triples
    Triples,
    /// `r ≡ 1`: two quadruples, then triples
    TwoQuadruples,
    /// `r ≡ 0`: one quadruple, then triples
    OneQuadruple,
}

impl RegularCase {
    pub fn of(r: usize) -> RegularCase {
        match r % 3 {
            2 => RegularCase::Triples,
            1 => RegularCase::TwoQuadruples,
            _ => RegularCase::OneQuadruple,
        }
    }

    /// Number of color classes in each block for degree `r`.
    pub fn block_sizes(self, r: usize) -> Vec<usize> {
        let quads = match self {
            RegularCase::Triples => 0,
            RegularCase::OneQuadruple => 1,
            RegularCase::TwoQuadruples => 2,
        };
        let triples = (r + 1 - 4 * quads) / 3;
        let mut sizes = vec![4; quads];
        sizes.extend(std::iter::repeat_n(3, triples));
        sizes
    }

    /// Expected part count `k`.
    pub fn part_count(self, r: usize) -> usize {
        match self {
            RegularCase::Triples => (r + 1) / 3,
            RegularCase::TwoQuadruples => (r - 1) / 3,
            RegularCase::OneQuadruple => r / 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RegularPartition {
    pub partition: EdgePartition,
    pub case: RegularCase,
    /// per-part maximum degree allowed by the layout (3 or 4)
    pub degree_bounds: Vec<usize>,
}

/// Groups the `r + 1` Misra–Gries color classes of an `r`-regular graph
/// (`r ≥ 5`) into consecutive blocks of four and three classes.
///
/// Every block is re-checked for normality; a block that comes out empty or
/// with an isolated edge is reported as [`PartitionError::InvalidGrouping`].
pub fn partition_regular(g: &Graph) -> Result<RegularPartition, PartitionError> {
    let r = g.regular_degree().ok_or(PartitionError::NotRegular)?;
    if r < 5 {
        return Err(PartitionError::DegreeTooSmall { needed: 5, found: r });
    }
    let coloring = misra_gries(g);
    let classes = color_classes(g, &coloring, r + 1).expect("at most r + 1 colors");
    let case = RegularCase::of(r);
    let sizes = case.block_sizes(r);
    debug_assert_eq!(sizes.iter().sum::<usize>(), r + 1);
    debug_assert_eq!(sizes.len(), case.part_count(r));
    let mut parts: Vec<Vec<EdgeId>> = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for (i, &size) in sizes.iter().enumerate() {
        let part: Vec<EdgeId> = classes[next..next + size].iter().flatten().copied().collect();
        next += size;
        if part.is_empty() {
            return Err(PartitionError::InvalidGrouping {
                part: i,
                reason: "all grouped color classes are empty".into(),
            });
        }
        let sub = edge_induced(g, &part)?;
        if !sub.graph.is_normal() {
            return Err(PartitionError::InvalidGrouping {
                part: i,
                reason: "block has an isolated edge".into(),
            });
        }
        parts.push(part);
    }
    Ok(RegularPartition {
        partition: EdgePartition::new(g, parts)?,
        case,
        degree_bounds: sizes,
    })
}
