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


use avd_core::graph::generate::{complete, cycle, rng};
use avd_core::graph::{disjoint_union, EdgeId, Graph, Side, SubgraphSelection};
use avd_core::partition::*;
use proptest::prelude::*;
use rand::Rng;

mod common;

fn max_degree_of(edges: &[EdgeId], n: usize) -> usize {
    let mut d = vec![0; n];
    for e in edges {
        d[e.low()] += 1;
        d[e.high()] += 1;
    }
    d.into_iter().max().unwrap_or(0)
}

fn is_normal_edge_set(edges: &[EdgeId], n: usize) -> bool {
    let mut d = vec![0; n];
    for e in edges {
        d[e.low()] += 1;
        d[e.high()] += 1;
    }
    edges.iter().all(|e| d[e.low()] > 1 || d[e.high()] > 1)
}

/// K7 with a disjoint 4-cycle, selection = a finished K7 split plus `extra`.
fn k7_plus_c4(extra: &[(usize, usize)]) -> (Graph, Vec<EdgeId>) {
    let k7 = complete(7);
    let split = partition_p1(&k7).unwrap();
    let g = disjoint_union(&k7, &cycle(4));
    let mut sel: Vec<EdgeId> = split.selected().to_vec();
    sel.extend(extra.iter().map(|&(a, b)| EdgeId::new(a, b).unwrap()));
    (g, sel)
}

#[test]
fn k7_split_meets_degree_bounds() {
    let g = complete(7);
    let out = partition_p1(&g).unwrap();
    assert!(max_degree_of(out.selected(), 7) <= 3);
    assert!(max_degree_of(out.complement(), 7) <= 4);
    assert!(is_normal_edge_set(out.selected(), 7));
    assert!(is_normal_edge_set(out.complement(), 7));
    assert_eq!(out.selected().len() + out.complement().len(), 21);
}

#[test]
fn isolated_selected_edge_at_low_degree_is_dropped() {
    let (g, sel) = k7_plus_c4(&[(7, 8)]);
    let mut s = SubgraphSelection::from_edges(&g, &sel).unwrap();
    let (p, e) = s.potential();
    assert_eq!(s.isolated(Side::Selected).len(), 1);
    let MoveSearch::Move(mv) = find_move(&s).unwrap() else { panic!("no move") };
    assert_eq!(mv.variant, MoveVariant::DropIsolatedHEdge);
    assert_eq!(mv.remove_set, vec![EdgeId::new(7, 8).unwrap()]);
    apply_move(&mut s, &mv).unwrap();
    assert_eq!(s.isolated(Side::Selected).len(), 0);
    assert_eq!(s.potential(), (p - 1, e - 1));
}

#[test]
fn isolated_complement_edge_is_added() {
    let (g, sel) = k7_plus_c4(&[(8, 9), (9, 10), (7, 10)]);
    let mut s = SubgraphSelection::from_edges(&g, &sel).unwrap();
    let before_c = s.isolated(Side::Complement).len();
    assert_eq!(before_c, 1);
    let MoveSearch::Move(mv) = find_move(&s).unwrap() else { panic!("no move") };
    assert_eq!(mv.variant, MoveVariant::AddHbarEdges);
    apply_move(&mut s, &mv).unwrap();
    assert_eq!(s.isolated(Side::Complement).len(), before_c - 1);
    assert_eq!(s.isolated(Side::Selected).len(), 0);
}

#[test]
fn stale_move_is_rejected() {
    let (g, sel) = k7_plus_c4(&[(7, 8)]);
    let mut s = SubgraphSelection::from_edges(&g, &sel).unwrap();
    let MoveSearch::Move(mv) = find_move(&s).unwrap() else { panic!("no move") };
    let other = g.edge_index(9, 10).unwrap();
    s.insert(other);
    s.remove(other);
    assert!(matches!(apply_move(&mut s, &mv), Err(PartitionError::StaleMove { .. })));
}

#[test]
fn nothing_to_improve_on_a_finished_split() {
    let g = complete(7);
    let out = partition_p1(&g).unwrap();
    let s = SubgraphSelection::from_edges(&g, out.selected()).unwrap();
    assert!(find_move(&s).is_err());
}

#[test]
fn single_edge_drop_lowers_only_the_edge_count() {
    // sweep random admissible selections for moves that only drop one edge
    let mut seen = 0;
    for seed in 0..60 {
        let g = common::thinned_regular(seed, 14 + (seed as usize % 10), 6, 6);
        let mut r = rng(seed);
        let mut sel = initial_selection(&g).unwrap();
        for _ in 0..40 {
            perturb(&g, &mut sel, &mut r, 0.4);
            if sel.isolated_total() == 0 {
                continue;
            }
            if let MoveSearch::Move(mv) = find_move(&sel).unwrap() {
                if mv.variant == MoveVariant::DropHEdges && mv.add_set.is_empty() && mv.remove_set.len() == 1 {
                    let (p, e) = mv.potential_before;
                    assert_eq!(mv.potential_after.1, e - 1);
                    assert!(mv.potential_after.0 <= p);
                    if mv.potential_after.0 == p {
                        seen += 1;
                    }
                }
            }
        }
    }
    assert!(seen > 0, "no pure single-edge drops observed");
}

/// Random walk inside the admissible family: toggles edges, keeping only
/// toggles that preserve membership.
fn perturb(g: &Graph, sel: &mut SubgraphSelection<'_>, r: &mut impl Rng, insert_bias: f64) {
    for _ in 0..g.edge_count() {
        let e = r.gen_range(0..g.edge_count());
        let mut t = sel.clone();
        if r.gen_bool(insert_bias) {
            t.insert(e);
        } else {
            t.remove(e);
        }
        if check_membership(g, &t).is_member() {
            *sel = t;
        }
    }
}

fn check_move_invariants(sel: &SubgraphSelection<'_>, mv: &Move) -> Result<(), TestCaseError> {
    let g = sel.host();
    for e in &mv.add_set {
        prop_assert!(!sel.contains(g.index_of(*e).unwrap()), "added edge {} already selected", e);
        prop_assert!(!mv.remove_set.contains(e));
    }
    for e in &mv.remove_set {
        prop_assert!(sel.contains(g.index_of(*e).unwrap()), "removed edge {} not selected", e);
    }
    let mut next = sel.clone();
    apply_move(&mut next, mv).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(check_membership(g, &next).is_member());
    prop_assert!(next.potential() < sel.potential());
    prop_assert_eq!(next.potential(), mv.potential_after);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moves_from_random_admissible_states_are_valid(
        seed in 0u64..10_000,
        n in 12usize..30,
        deg in 6usize..10,
        bias in 0.05f64..0.95,
    ) {
        let g = common::thinned_regular(seed, n, deg, 6);
        let mut r = rng(seed ^ 0xabcdef);
        let mut sel = initial_selection(&g).unwrap();
        for _ in 0..20 {
            perturb(&g, &mut sel, &mut r, bias);
            for v in g.vertices() {
                prop_assert!(!both_types(&sel, v));
            }
            if sel.isolated_total() == 0 {
                continue;
            }
            match find_move(&sel).unwrap() {
                MoveSearch::Move(mv) => check_move_invariants(&sel, &mv)?,
                MoveSearch::ClosureExhausted(c) => {
                    return Err(TestCaseError::fail(format!("closure exhausted: {c:?}")));
                }
            }
        }
    }

    #[test]
    fn improve_reaches_zero_from_random_admissible_states(
        seed in 0u64..10_000,
        n in 12usize..30,
        deg in 6usize..10,
        bias in 0.05f64..0.95,
    ) {
        let g = common::thinned_regular(seed, n, deg, 6);
        let mut r = rng(seed);
        let mut sel = initial_selection(&g).unwrap();
        perturb(&g, &mut sel, &mut r, bias);
        let start = sel.potential();
        let moves = improve(&mut sel).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(sel.isolated_total(), 0);
        prop_assert!(check_membership(&g, &sel).is_member());
        let mut prev = start;
        for m in &moves {
            prop_assert_eq!(m.before, prev);
            prop_assert!(m.after < m.before);
            prev = m.after;
        }
        prop_assert!(moves.len() <= (start.0 + 1) * (g.edge_count() + 1));
    }

    #[test]
    fn split_output_meets_degree_bounds(seed in 0u64..10_000, n in 10usize..40, p in 0.2f64..0.6) {
        let g = common::normal_gnp(seed, n, p, 6..=30);
        let out = partition_p1(&g).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let nv = g.vertex_count();
        prop_assert!(max_degree_of(out.selected(), nv) <= 3);
        prop_assert!(max_degree_of(out.complement(), nv) <= g.max_degree() - 2);
        prop_assert!(is_normal_edge_set(out.selected(), nv));
        prop_assert!(is_normal_edge_set(out.complement(), nv));
        prop_assert!(out.partition.validate(&g).is_ok());
    }
}

#[test]
fn initial_selection_on_k7_covers_every_vertex_twice() {
    let g = complete(7);
    let sel = initial_selection(&g).unwrap();
    assert!(g.vertices().all(|v| sel.degree(v) >= 2));
}

#[test]
fn initial_selection_on_six_regular_graphs() {
    for seed in 0..10 {
        let g = avd_core::graph::generate::random_regular(12, 6, seed).unwrap();
        let sel = initial_selection(&g).unwrap();
        assert!(g.vertices().all(|v| (2..=3).contains(&sel.degree(v))), "seed {seed}");
    }
}

#[test]
fn initial_selection_with_one_full_degree_vertex() {
    // K7 minus a perfect-ish matching leaves vertex 0 as the only Δ-vertex
    let k7 = complete(7);
    let drop = [(1, 2), (3, 4), (5, 6)];
    let g = Graph::from_edges(7, k7.edges().iter().map(|e| e.endpoints()).filter(|p| !drop.contains(p))).unwrap();
    assert_eq!(g.max_degree(), 6);
    assert_eq!(g.vertices().filter(|&v| g.degree(v) == 6).count(), 1);
    let sel = initial_selection(&g).unwrap();
    assert!(sel.degree(0) >= 2);
    assert!(check_membership(&g, &sel).is_member());
}

#[test]
fn empty_selection_on_k7_violates_everywhere() {
    let g = complete(7);
    let report = check_membership(&g, &SubgraphSelection::new(&g));
    assert_eq!(report.violations.len(), 7);
    assert!(report.violations.iter().all(|v| v.condition == MembershipCondition::FullDegree));
    assert!(!report.is_member());
}

#[test]
fn degree_ten_graphs_peel_at_most_three_layers() {
    for seed in 0..8 {
        let g = avd_core::graph::generate::random_regular(24, 10, seed).unwrap();
        let layered = partition_p2(&g).unwrap();
        assert!(layered.k() <= 3, "seed {seed}: k={}", layered.k());
        let parts = layered.partition.parts();
        assert!(max_degree_of(&parts[0], 24) <= 5);
        for p in &parts[1..] {
            assert!(max_degree_of(p, 24) <= 3);
            assert!(is_normal_edge_set(p, 24));
        }
    }
}

#[test]
fn degree_six_peels_one_layer() {
    let g = complete(7);
    let layered = partition_p2(&g).unwrap();
    assert_eq!(layered.k(), 1);
    let mut degrees: Vec<usize> = layered.partition.parts().iter().map(|p| max_degree_of(p, 7)).collect();
    degrees.sort_unstable();
    assert!(degrees[0] <= 3 && degrees[1] <= 4);
}
