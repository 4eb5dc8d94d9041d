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


//! One-stop report running the whole pipeline and every checker on a graph.

use std::fmt::Write as _;

use serde::Serialize;

use crate::avd::{avd_color_regular_with, avd_color_with, general_bound, regular_bound, ColorConfig};
use crate::graph::{edge_induced, EdgeId, Graph};
use crate::partition::{partition_p1_observed, partition_p2, partition_regular, peel_bound, RegularCase};
use crate::vizing::misra_gries;

use super::{check_certificate, check_proper, exact_chi_a, exact_chromatic_index_capped, DEFAULT_ORACLE_EDGE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    /// exact oracles run only on graphs with at most this many edges
    pub oracle_edge_cap: usize,
    pub color: ColorConfig,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            oracle_edge_cap: DEFAULT_ORACLE_EDGE_CAP,
            color: ColorConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub regular: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A claimed color bound next to the count actually certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub name: String,
    pub claimed: usize,
    pub certified: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub summary: GraphSummary,
    pub checks: Vec<CheckEntry>,
    pub bounds: Vec<BoundRow>,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let mut out = format!(
            "graph: n={} m={} Δ={} δ={} regular={}\n",
            s.vertices,
            s.edges,
            s.max_degree,
            s.min_degree,
            s.regular.map_or("no".to_string(), |r| r.to_string())
        );
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        for b in &self.bounds {
            let _ = writeln!(out, "bound {}: certified {} <= claimed {}", b.name, b.certified, b.claimed);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "overall: {}", if self.pass() { "PASS" } else { "FAIL" });
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            pass: bool,
            #[serde(flatten)]
            report: &'a AuditReport,
        }
        serde_json::to_string_pretty(&Doc {
            pass: self.pass(),
            report: self,
        })
        .expect("report serializes")
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckEntry {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }
}

fn part_degree(g: &Graph, part: &[EdgeId]) -> (usize, bool) {
    match edge_induced(g, part) {
        Ok(sub) => (sub.graph.max_degree(), sub.graph.is_normal()),
        Err(_) => (usize::MAX, false),
    }
}

/// Runs every stage on `g` and records each check. Failures become report
/// entries; nothing is returned as an error.
pub fn audit(g: &Graph, config: &AuditConfig) -> AuditReport {
    let delta = g.max_degree();
    let mut report = AuditReport {
        summary: GraphSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            max_degree: delta,
            min_degree: g.min_degree(),
            regular: g.regular_degree(),
        },
        checks: Vec::new(),
        bounds: Vec::new(),
        notes: Vec::new(),
    };
    if !g.is_normal() {
        report.check("precondition: normal", false, "graph has an isolated edge or vertex");
        return report;
    }

    let mg = misra_gries(g);
    let proper = check_proper(g, &mg);
    report.check(
        "vizing: proper with at most Δ+1 colors",
        proper.is_ok() && mg.palette_size() <= delta + 1,
        match proper {
            Ok(()) => format!("{} colors", mg.palette_size()),
            Err(f) => f.to_string(),
        },
    );

    if delta >= 6 {
        audit_split(g, &mut report);
    }
    if delta >= 4 {
        audit_layers(g, &mut report);
    }
    let general = avd_color_with(g, &config.color);
    let mut best = None;
    match general {
        Ok(cert) => {
            let ok = check_certificate(g, &cert);
            report.check(
                "coloring: general certificate",
                ok.is_ok(),
                ok.map_or_else(|f| f.to_string(), |_| format!("{} colors", cert.colors_used)),
            );
            report.bounds.push(BoundRow {
                name: "floor(5(Δ+2)/2)".into(),
                claimed: general_bound(delta),
                certified: cert.colors_used,
            });
            best = Some(cert.colors_used);
        }
        Err(e) => report.check("coloring: general certificate", false, e.to_string()),
    }

    if let Some(r) = g.regular_degree().filter(|&r| r >= 2) {
        if r >= 5 {
            audit_grouping(g, r, &mut report);
        }
        match avd_color_regular_with(g, &config.color) {
            Ok(cert) => {
                let ok = check_certificate(g, &cert);
                report.check(
                    "coloring: regular certificate",
                    ok.is_ok(),
                    ok.map_or_else(|f| f.to_string(), |_| format!("{} colors", cert.colors_used)),
                );
                report.bounds.push(BoundRow {
                    name: "floor((5r+37)/3)".into(),
                    claimed: regular_bound(r),
                    certified: cert.colors_used,
                });
                best = Some(best.map_or(cert.colors_used, |b: usize| b.min(cert.colors_used)));
            }
            Err(e) => report.check("coloring: regular certificate", false, e.to_string()),
        }
    }

    if g.edge_count() <= config.oracle_edge_cap {
        let chi = exact_chromatic_index_capped(g, config.oracle_edge_cap);
        let chi_a = exact_chi_a(g, best.unwrap_or(3 * delta).max(delta));
        match (chi, chi_a) {
            (Ok(chi), Ok(chi_a)) => {
                report.check(
                    "oracle: Δ <= χ' <= Δ+1",
                    chi == delta || chi == delta + 1,
                    format!("χ'={chi}"),
                );
                report.check(
                    "oracle: χ' <= χ'_a <= certified",
                    chi <= chi_a && best.is_none_or(|b| chi_a <= b),
                    format!("χ'_a={chi_a}"),
                );
            }
            (chi, chi_a) => report.check(
                "oracle: exact values",
                false,
                format!("χ' {chi:?}, χ'_a {chi_a:?}"),
            ),
        }
    } else {
        report.notes.push(format!(
            "exact oracles skipped: {} edges above the cap {}",
            g.edge_count(),
            config.oracle_edge_cap
        ));
    }
    report
}

fn audit_split(g: &Graph, report: &mut AuditReport) {
    let delta = g.max_degree();
    let mut monotone = true;
    let mut member = true;
    let out = partition_p1_observed(g, |rec, sel| {
        monotone &= rec.after < rec.before;
        member &= crate::partition::check_membership(g, sel).is_member();
    });
    match out {
        Ok(split) => {
            let (dh, nh) = part_degree(g, split.selected());
            let (dc, nc) = part_degree(g, split.complement());
            report.check("split: Δ(H) <= 3", dh <= 3, format!("Δ(H)={dh}"));
            report.check("split: Δ(H̄) <= Δ-2", dc + 2 <= delta, format!("Δ(H̄)={dc}"));
            report.check("split: both sides normal", nh && nc, format!("H normal {nh}, H̄ normal {nc}"));
            report.check(
                "split: potential decreases with admissible states",
                monotone && member,
                format!("{} moves", split.moves.len()),
            );
        }
        Err(e) => report.check("split", false, e.to_string()),
    }
}

fn audit_layers(g: &Graph, report: &mut AuditReport) {
    match partition_p2(g) {
        Ok(layered) => {
            let k = layered.k();
            let parts = layered.partition.parts();
            let degrees: Vec<(usize, bool)> = parts.iter().map(|p| part_degree(g, p)).collect();
            report.check(
                "layers: k within bound",
                k <= peel_bound(g.max_degree()),
                format!("k={k}, bound {}", peel_bound(g.max_degree())),
            );
            let ok = degrees[0].0 <= 5 && degrees[1..].iter().all(|d| d.0 <= 3);
            report.check(
                "layers: Δ(G0) <= 5 and Δ(Gi) <= 3",
                ok,
                format!("{:?}", degrees.iter().map(|d| d.0).collect::<Vec<_>>()),
            );
            report.check("layers: every part normal", degrees.iter().all(|d| d.1), "");
        }
        Err(e) => report.check("layers", false, e.to_string()),
    }
}

fn audit_grouping(g: &Graph, r: usize, report: &mut AuditReport) {
    match partition_regular(g) {
        Ok(grouped) => {
            let case = RegularCase::of(r);
            let degrees: Vec<(usize, bool)> = grouped.partition.parts().iter().map(|p| part_degree(g, p)).collect();
            report.check(
                "grouping: part count",
                grouped.partition.len() == case.part_count(r),
                format!("{} parts, {case:?}", grouped.partition.len()),
            );
            let ok = degrees
                .iter()
                .zip(&grouped.degree_bounds)
                .all(|(d, &b)| d.0 <= b && d.1);
            report.check(
                "grouping: per-part degree and normality",
                ok,
                format!("{:?}", degrees.iter().map(|d| d.0).collect::<Vec<_>>()),
            );
        }
        Err(e) => report.check("grouping", false, e.to_string()),
    }
}
