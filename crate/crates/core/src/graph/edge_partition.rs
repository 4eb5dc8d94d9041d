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

use super::{EdgeId, Graph, GraphError};

/// Ordered, pairwise disjoint, nonempty edge sets covering a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    parts: Vec<Vec<EdgeId>>,
}

impl EdgePartition {
    /// Validates disjointness, coverage and nonemptiness against `host`.
    pub fn new(host: &Graph, parts: Vec<Vec<EdgeId>>) -> Result<Self, GraphError> {
        let mut owner = vec![usize::MAX; host.edge_count()];
        for (p, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(GraphError::InvalidPartition(format!("part {p} is empty")));
            }
            for &e in part {
                let i = host.index_of(e).ok_or(GraphError::EdgeNotInHost(e))?;
                if owner[i] != usize::MAX {
                    return Err(GraphError::InvalidPartition(format!(
                        "edge {e} lies in parts {} and {p}",
                        owner[i]
                    )));
                }
                owner[i] = p;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(GraphError::InvalidPartition(format!(
                "edge {} is not covered",
                host.edge(i)
            )));
        }
        let mut parts = parts;
        for part in &mut parts {
            part.sort_unstable();
        }
        Ok(EdgePartition { parts })
    }

    pub fn parts(&self) -> &[Vec<EdgeId>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Re-checks the partition against a host.
    pub fn validate(&self, host: &Graph) -> Result<(), GraphError> {
        EdgePartition::new(host, self.parts.clone()).map(|_| ())
    }

    pub fn into_parts(self) -> Vec<Vec<EdgeId>> {
        self.parts
    }
}
