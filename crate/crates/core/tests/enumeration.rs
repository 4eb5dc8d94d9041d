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


mod common;

use common::enumerate::connected_bounded_degree;

#[test]
fn counts_all_connected_graphs_up_to_seven_vertices() {
    let levels = connected_bounded_degree(7, 16);
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
}

#[test]
fn counts_connected_subcubic_graphs() {
    let levels = connected_bounded_degree(8, 3);
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 10, 29, 64, 194]);
}
