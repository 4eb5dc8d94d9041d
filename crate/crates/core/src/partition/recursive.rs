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

use crate::graph::{edge_induced, EdgeId, EdgePartition, Graph};

use super::{partition_p1, PartitionError};

/// Parts `G_0, G_1, …, G_k`: `G_0` has `Δ ≤ 5`, the others `Δ ≤ 3`.
#[derive(Clone, Debug)]
pub struct LayeredPartition {
    pub partition: EdgePartition,
    /// moves spent by each split, outermost first
    pub moves_per_split: Vec<usize>,
}

impl LayeredPartition {
    /// Number of parts beyond `G_0`.
    pub fn k(&self) -> usize {
        self.partition.len() - 1
    }
}

/// Largest allowed `k` for a graph of maximum degree `delta ≥ 4`.
pub fn peel_bound(delta: usize) -> usize {
    if delta < 6 {
        0
    } else {
        delta / 2 - 2
    }
}

/// Splits off `Δ ≤ 3` layers until the remainder has `Δ ≤ 5`.
///
/// Each layer comes from [`partition_p1`] applied to the remainder. The
/// remainder becomes `G_0` and the layers follow, innermost first; when a
/// split leaves a complement of maximum degree 3, the selected side is
/// `G_0` and the complement `G_1`.
pub fn partition_p2(g: &Graph) -> Result<LayeredPartition, PartitionError> {
    if !g.is_normal() {
        return Err(PartitionError::NotNormal);
    }
    if g.max_degree() < 4 {
        return Err(PartitionError::DegreeTooSmall {
            needed: 4,
            found: g.max_degree(),
        });
    }
    let mut moves_per_split = Vec::new();
    let parts = layers(g, g.edges().to_vec(), &mut moves_per_split)?;
    Ok(LayeredPartition {
        partition: EdgePartition::new(g, parts)?,
        moves_per_split,
    })
}

fn layers(
    host: &Graph,
    edges: Vec<EdgeId>,
    moves: &mut Vec<usize>,
) -> Result<Vec<Vec<EdgeId>>, PartitionError> {
    let sub = edge_induced(host, &edges)?;
    if sub.graph.max_degree() <= 5 {
        return Ok(vec![edges]);
    }
    let split = partition_p1(&sub.graph)?;
    moves.push(split.moves.len());
    let to_host = |local: &[EdgeId]| -> Vec<EdgeId> {
        local
            .iter()
            .map(|e| {
                EdgeId::new(sub.vertex_map[e.low()], sub.vertex_map[e.high()])
                    .expect("relabeling keeps endpoints distinct")
            })
            .collect()
    };
    let h = to_host(split.selected());
    let rest = to_host(split.complement());
    let rest_delta = edge_induced(host, &rest)?.graph.max_degree();
    if rest_delta <= 3 {
        return Ok(vec![h, rest]);
    }
    let mut parts = layers(host, rest, moves)?;
    parts.push(h);
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, random_regular};

    #[test]
    fn small_degree_is_a_single_part() {
        let g = random_regular(12, 5, 3).unwrap();
        let p = partition_p2(&g).unwrap();
        assert_eq!(p.k(), 0);
        assert_eq!(p.partition.parts()[0].len(), g.edge_count());
    }

    #[test]
    fn bound_table() {
        assert_eq!(peel_bound(4), 0);
        assert_eq!(peel_bound(5), 0);
        assert_eq!(peel_bound(6), 1);
        assert_eq!(peel_bound(7), 1);
        assert_eq!(peel_bound(10), 3);
    }

    #[test]
    fn k7_gives_two_parts() {
        let g = complete(7);
        let p = partition_p2(&g).unwrap();
        assert_eq!(p.k(), 1);
        for part in p.partition.parts() {
            let sub = edge_induced(&g, part).unwrap();
            assert!(sub.graph.is_normal());
        }
    }

    #[test]
    fn rejects_low_degree_and_non_normal() {
        assert!(matches!(
            partition_p2(&crate::graph::generate::cycle(5)),
            Err(PartitionError::DegreeTooSmall { .. })
        ));
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(matches!(partition_p2(&k2), Err(PartitionError::NotNormal)));
    }
}
