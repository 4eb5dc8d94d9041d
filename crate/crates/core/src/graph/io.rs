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

//! Text formats: graph6, DIMACS edge format and a plain 0-indexed edge list.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{Graph, GraphError, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Graph6,
    Dimacs,
    #[value(name = "edgelist")]
    EdgeList,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "dimacs" | "col" => Ok(Format::Dimacs),
            "edgelist" | "edge-list" | "el" | "txt" => Ok(Format::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

impl Format {
    /// Best guess from file contents: DIMACS has a `p` line, graph6 is a single
    /// printable token, anything else is read as an edge list.
    pub fn sniff(text: &[u8]) -> Format {
        let s = String::from_utf8_lossy(text);
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        if s.lines().any(|l| l.trim_start().starts_with("p ")) {
            return Format::Dimacs;
        }
        match (lines.next(), lines.next()) {
            (Some(first), None) => {
                let body = first.strip_prefix(">>graph6<<").unwrap_or(first);
                if !body.is_empty() && body.bytes().all(|b| (63..=126).contains(&b)) {
                    Format::Graph6
                } else {
                    Format::EdgeList
                }
            }
            _ => Format::EdgeList,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_graph(text: &[u8], format: Format) -> Result<Graph, GraphError> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::Dimacs => parse_dimacs(text),
        Format::EdgeList => parse_edge_list(text),
    }
}

pub fn emit_graph(g: &Graph, format: Format) -> Vec<u8> {
    match format {
        Format::Graph6 => emit_graph6(g).into_bytes(),
        Format::Dimacs => emit_dimacs(g).into_bytes(),
        Format::EdgeList => emit_edge_list(g).into_bytes(),
    }
}

const G6_HEADER: &[u8] = b">>graph6<<";

fn parse_graph6(text: &[u8]) -> Result<Graph, GraphError> {
    let mut bytes = text.trim_ascii();
    if let Some(rest) = bytes.strip_prefix(G6_HEADER) {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(parse_err(1, "empty graph6 string"));
    }
    if let Some(b) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(parse_err(1, format!("byte {b:#04x} outside the graph6 range")));
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(parse_err(1, "truncated graph6 size field"));
        }
        (sextets(&bytes[1..4]), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(parse_err(1, "truncated graph6 size field"));
        }
        (sextets(&bytes[2..8]), &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(parse_err(
            1,
            format!("expected {need} adjacency bytes for n = {n}, found {}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

fn sextets(bytes: &[u8]) -> usize {
    bytes
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
}

fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258048 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    let mut s = String::from_utf8(out).expect("graph6 bytes are ASCII");
    s.push('\n');
    s
}

fn parse_dimacs(text: &[u8]) -> Result<Graph, GraphError> {
    let text = String::from_utf8_lossy(text);
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.trim();
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line_no, "second problem line"));
                }
                let kind = tok.next();
                if !matches!(kind, Some("edge") | Some("col")) {
                    return Err(parse_err(line_no, "expected `p edge N M`"));
                }
                let n = parse_usize(tok.next(), line_no)?;
                let m = parse_usize(tok.next(), line_no)?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err(line_no, "edge before `p` line"))?;
                let a = parse_usize(tok.next(), line_no)?;
                let b = parse_usize(tok.next(), line_no)?;
                for x in [a, b] {
                    if x == 0 || x > n {
                        return Err(GraphError::VertexOutOfRange { vertex: x, n });
                    }
                }
                edges.push((a - 1, b - 1));
            }
            Some(other) => {
                return Err(parse_err(line_no, format!("unknown line type `{other}`")));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(1, "missing `p edge N M` line"))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header announces {m} edges but {} were listed", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

fn parse_usize(tok: Option<&str>, line: usize) -> Result<usize, GraphError> {
    let t = tok.ok_or_else(|| parse_err(line, "missing integer"))?;
    t.parse()
        .map_err(|_| parse_err(line, format!("`{t}` is not a nonnegative integer")))
}

fn emit_dimacs(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(s, "e {} {}", e.low() + 1, e.high() + 1);
    }
    s
}

const VERTICES_DIRECTIVE: &str = "# vertices:";

/// One `u v` pair per line. A `# vertices: N` line fixes the vertex count so
/// trailing isolated vertices survive; other `#` lines are comments.
fn parse_edge_list(text: &[u8]) -> Result<Graph, GraphError> {
    let text = String::from_utf8_lossy(text);
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix(VERTICES_DIRECTIVE) {
            declared = Some(parse_usize(Some(rest.trim()), line_no)?);
            continue;
        }
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let a = parse_usize(tok.next(), line_no)?;
        let b = parse_usize(tok.next(), line_no)?;
        if tok.next().is_some() {
            return Err(parse_err(line_no, "expected exactly two vertices"));
        }
        edges.push((a, b));
    }
    let inferred = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) => n,
        None => inferred,
    };
    Graph::from_edges(n, edges)
}

fn emit_edge_list(g: &Graph) -> String {
    let mut s = format!("{VERTICES_DIRECTIVE} {}\n", g.vertex_count());
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.low(), e.high());
    }
    s
}
