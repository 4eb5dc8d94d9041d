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


use avd_core::avd::*;
use avd_core::graph::generate::{gnp, rng};
use avd_core::graph::{edge_induced, EdgeId, Graph};
use avd_core::verify::{check_avd, check_certificate, exact_chi_a};
use avd_core::vizing::EdgeColoring;
use proptest::prelude::*;
use rand::Rng;

mod common;

fn small_normal(seed: u64, max_edges: usize) -> Option<Graph> {
    let mut r = rng(seed);
    let n = r.gen_range(3..=9);
    let g = gnp(n, r.gen_range(0.2..0.8), seed).unwrap();
    let edges: Vec<EdgeId> = g.edges().iter().copied().take(max_edges).collect();
    common::normalize(n, &edges)
}

fn smallest(g: &Graph) -> usize {
    (g.max_degree()..)
        .find(|&b| matches!(avd_color_budget(g, b).unwrap(), BudgetOutcome::Certified(_)))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smallest_budget_matches_oracle(seed in any::<u64>()) {
        let Some(g) = small_normal(seed, 12) else { return Ok(()) };
        prop_assert_eq!(smallest(&g), exact_chi_a(&g, 3 * g.max_degree().max(2)).unwrap());
    }

    #[test]
    fn budgets_are_monotone(seed in any::<u64>()) {
        let Some(g) = small_normal(seed, 12) else { return Ok(()) };
        let mut seen = false;
        for b in g.max_degree()..=g.edge_count().max(g.max_degree()) + 1 {
            let ok = matches!(avd_color_budget(&g, b).unwrap(), BudgetOutcome::Certified(_));
            prop_assert!(ok || !seen, "budget {} fails after a smaller one succeeded", b);
            seen |= ok;
        }
        prop_assert!(seen);
    }

    #[test]
    fn composition_of_valid_parts_is_valid(seed in any::<u64>(), parts in 2usize..4) {
        let g = common::trimmed_gnp(seed, 14, 0.4, 3..=7);
        let mut r = rng(seed);
        // random split; retry until every part is normal
        let split = (0..200).find_map(|_| {
            let mut buckets = vec![Vec::new(); parts];
            for &e in g.edges() {
                buckets[r.gen_range(0..parts)].push(e);
            }
            let subs: Vec<_> = buckets
                .iter()
                .map(|b| edge_induced(&g, b).ok().filter(|s| !b.is_empty() && s.graph.is_normal()))
                .collect::<Option<Vec<_>>>()?;
            Some(subs)
        });
        let Some(subs) = split else { return Ok(()) };
        let mut colored = Vec::new();
        let mut total = 0;
        for sub in subs {
            let cert = ascend(&sub.graph, 3 * sub.graph.max_degree().max(2), &ColorConfig::default()).unwrap();
            total += cert.colors_used;
            colored.push((sub, cert));
        }
        let out = compose(&g, &colored).unwrap();
        prop_assert!(check_certificate(&g, &out).is_ok());
        prop_assert_eq!(out.colors_used, total);
    }

    #[test]
    fn general_driver_certifies_within_bound(seed in any::<u64>(), n in 8usize..30, p in 0.1f64..0.6) {
        let g = common::trimmed_gnp(seed, n, p, 2..=10);
        let cert = avd_color(&g).unwrap();
        prop_assert!(cert.colors_used <= general_bound(g.max_degree()));
        prop_assert!(check_certificate(&g, &cert).is_ok());
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let g = common::trimmed_gnp(5, 20, 0.3, 4..=8);
    let cert = avd_color(&g).unwrap();
    check_certificate(&g, &cert).unwrap();

    let mut wrong_count = cert.clone();
    wrong_count.colors_used += 1;
    assert!(check_certificate(&g, &wrong_count).is_err());

    let mut low_bound = cert.clone();
    low_bound.bound_claimed = cert.colors_used - 1;
    assert!(check_certificate(&g, &low_bound).is_err());

    let mut no_witness = cert.clone();
    if no_witness.witnesses.pop().is_some() {
        assert!(check_certificate(&g, &no_witness).is_err());
    }

    let mut recolored = cert.clone();
    let mut colors = cert.coloring.colors().to_vec();
    let (a, b) = g.edges()[0].endpoints();
    let other = g.incident(a).iter().chain(g.incident(b)).map(|&(_, e)| e).find(|&e| e != 0).unwrap();
    colors[0] = colors[other];
    recolored.coloring = EdgeColoring::new(colors);
    assert!(check_avd(&g, &recolored.coloring).is_err());
    assert!(check_certificate(&g, &recolored).is_err());
}

#[test]
fn certificate_text_round_trip_verifies() {
    let g = common::thinned_regular(9, 16, 7, 6);
    let cert = avd_color(&g).unwrap();
    let text = cert.to_json(&g);
    let back = AvdCertificate::from_json(&g, &text).unwrap();
    check_certificate(&g, &back).unwrap();
    assert_eq!(back, cert);
    let other = common::thinned_regular(10, 18, 7, 6);
    assert!(AvdCertificate::from_json(&other, &text).is_err());
}
