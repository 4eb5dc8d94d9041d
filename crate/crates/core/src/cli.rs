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


//! The `avdcolor` command line.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
//! or input errors, 3 when the partition engine or a colorer produced a
//! counterexample report (its state is written to the `--trace` path, or to
//! a file in the temporary directory).

use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::avd::{avd_color_regular_with, avd_color_with, AvdCertificate, AvdError, ColorConfig};
use crate::graph::generate::{generate, star, GraphKind};
use crate::graph::{edge_induced, emit_graph, parse_graph, EdgeId, Format, Graph};
use crate::partition::{
    partition_p1_observed, partition_p2, partition_regular, peel_bound, PartitionError, RegularCase,
};
use crate::verify::{audit, check_certificate, exact_chi_a, AuditConfig, AuditReport, DEFAULT_ORACLE_EDGE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "avdcolor", version, about = "Adjacent vertex distinguishing edge colorings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// graph format; inferred from the input when omitted
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// write the main output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// node cap for one capped search attempt
    #[arg(long, global = true, default_value_t = ColorConfig::default().node_cap)]
    pub budget_cap: u64,
    /// exact oracles refuse graphs with more edges than this
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_EDGE_CAP)]
    pub oracle_edge_cap: usize,
    /// stream the partition move log here (one JSON object per line)
    #[arg(long, global = true)]
    pub trace: Option<PathBuf>,
    /// worker threads for `audit` over a directory
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// AVD-color a normal graph within floor(5(Δ+2)/2) colors
    Color { input: Option<PathBuf> },
    /// AVD-color a regular graph within floor((5r+37)/3) colors
    ColorRegular { input: Option<PathBuf> },
    /// Split into layers of small maximum degree and check the conditions
    Partition { input: Option<PathBuf> },
    /// Group Vizing color classes of a regular graph
    PartitionRegular { input: Option<PathBuf> },
    /// Print the exact AVD chromatic index of a small graph
    Oracle { input: Option<PathBuf> },
    /// Write a generated graph
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Re-check a certificate against a graph
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Run every stage and checker; accepts a file or a directory of graphs
    Audit { input: Option<PathBuf> },
}

#[derive(Subcommand, Debug, Clone)]
pub enum GenKind {
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    Star { leaves: usize },
    Petersen,
    /// random r-regular graph on n vertices
    Regular { n: usize, r: usize },
    /// Erdős–Rényi G(n, p)
    Gnp { n: usize, p: f64 },
}

/// Failure carrying the exit status it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CHECK_FAILED,
            message: message.into(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let mut ctx = Context {
        opts: cli.opts,
        stdin,
        stdout,
    };
    match ctx.dispatch(&cli.command) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

struct Context<'a> {
    opts: GlobalOpts,
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Context<'_> {
    fn dispatch(&mut self, command: &Command) -> Outcome {
        match command {
            Command::Color { input } => self.color(input.as_deref(), false),
            Command::ColorRegular { input } => self.color(input.as_deref(), true),
            Command::Partition { input } => self.partition(input.as_deref()),
            Command::PartitionRegular { input } => self.partition_regular(input.as_deref()),
            Command::Oracle { input } => self.oracle(input.as_deref()),
            Command::Gen { kind } => self.gen(kind),
            Command::Verify { graph, certificate } => self.verify(graph, certificate),
            Command::Audit { input } => self.audit(input.as_deref()),
        }
    }

    fn color_config(&self) -> ColorConfig {
        ColorConfig {
            node_cap: self.opts.budget_cap,
            ..ColorConfig::default()
        }
    }

    fn read_graph(&mut self, input: Option<&Path>) -> Result<Graph, Failure> {
        let bytes = match input {
            Some(p) => fs::read(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
            None => {
                let mut buf = Vec::new();
                self.stdin
                    .read_to_end(&mut buf)
                    .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
                buf
            }
        };
        let format = self.opts.format.unwrap_or_else(|| Format::sniff(&bytes));
        parse_graph(&bytes, format).map_err(|e| Failure::usage(e.to_string()))
    }

    /// Writes `text` to `--out` when given, otherwise to stdout.
    fn emit(&mut self, text: &[u8]) -> Result<(), Failure> {
        match &self.opts.out {
            Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
            None => self.stdout.write_all(text).map_err(|e| Failure::usage(e.to_string())),
        }
    }

    fn say(&mut self, line: &str) -> Result<(), Failure> {
        writeln!(self.stdout, "{line}").map_err(|e| Failure::usage(e.to_string()))
    }

    /// Writes a counterexample dump and returns the matching failure.
    fn counterexample(&self, body: String) -> Failure {
        let path = self
            .opts
            .trace
            .clone()
            .unwrap_or_else(|| std::env::temp_dir().join("avdcolor-counterexample.json"));
        let written = fs::write(&path, body + "\n");
        Failure {
            code: EXIT_COUNTEREXAMPLE,
            message: match written {
                Ok(()) => format!("counterexample found; state written to {}", path.display()),
                Err(e) => format!("counterexample found; could not write {}: {e}", path.display()),
            },
        }
    }

    fn avd_failure(&self, e: AvdError) -> Failure {
        match e {
            AvdError::Partition(PartitionError::Counterexample(r)) => self.counterexample(r.to_json()),
            AvdError::InternalBoundViolation { budget, graph6 } => self.counterexample(
                serde_json::json!({ "kind": "bound violation", "budget": budget, "graph6": graph6 }).to_string(),
            ),
            other => Failure::check(other.to_string()),
        }
    }

    fn color(&mut self, input: Option<&Path>, regular: bool) -> Outcome {
        let g = self.read_graph(input)?;
        let config = self.color_config();
        let cert = if regular {
            avd_color_regular_with(&g, &config)
        } else {
            avd_color_with(&g, &config)
        }
        .map_err(|e| self.avd_failure(e))?;
        let mut text = cert.to_json(&g);
        text.push('\n');
        self.emit(text.as_bytes())?;
        self.say(&format!("colors={} bound={}", cert.colors_used, cert.bound_claimed))?;
        Ok(EXIT_OK)
    }

    fn partition(&mut self, input: Option<&Path>) -> Outcome {
        let g = self.read_graph(input)?;
        let delta = g.max_degree();
        let mut checks = Vec::new();
        if delta >= 6 {
            let mut trace = match &self.opts.trace {
                Some(p) => Some(BufWriter::new(
                    File::create(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
                )),
                None => None,
            };
            let split = partition_p1_observed(&g, |rec, _| {
                if let Some(t) = trace.as_mut() {
                    let _ = writeln!(t, "{}", rec.to_json_line());
                }
            });
            if let Some(mut t) = trace {
                let _ = t.flush();
            }
            let split = split.map_err(|e| match e {
                PartitionError::Counterexample(r) => self.counterexample(r.to_json()),
                other => Failure::check(other.to_string()),
            })?;
            let (dh, nh) = part_shape(&g, split.selected());
            let (dc, nc) = part_shape(&g, split.complement());
            checks.push(Check::new("split: Δ(H) <= 3", dh <= 3));
            checks.push(Check::new("split: Δ(H̄) <= Δ-2", dc + 2 <= delta));
            checks.push(Check::new("split: H normal", nh));
            checks.push(Check::new("split: H̄ normal", nc));
        }
        let layered = partition_p2(&g).map_err(|e| match e {
            PartitionError::Counterexample(r) => self.counterexample(r.to_json()),
            other => Failure::check(other.to_string()),
        })?;
        let parts = layered.partition.parts();
        let shapes: Vec<(usize, bool)> = parts.iter().map(|p| part_shape(&g, p)).collect();
        checks.push(Check::new("layers: k within bound", layered.k() <= peel_bound(delta)));
        checks.push(Check::new("layers: Δ(G0) <= 5", shapes[0].0 <= 5));
        checks.push(Check::new("layers: Δ(Gi) <= 3 for i >= 1", shapes[1..].iter().all(|s| s.0 <= 3)));
        checks.push(Check::new("layers: every part normal", shapes.iter().all(|s| s.1)));
        checks.push(Check::new("layers: exact cover", layered.partition.validate(&g).is_ok()));
        self.finish_partition(parts, &shapes, checks, None)
    }

    fn partition_regular(&mut self, input: Option<&Path>) -> Outcome {
        let g = self.read_graph(input)?;
        let grouped = partition_regular(&g).map_err(|e| Failure::check(e.to_string()))?;
        let r = g.regular_degree().expect("checked by the grouping");
        let parts = grouped.partition.parts();
        let shapes: Vec<(usize, bool)> = parts.iter().map(|p| part_shape(&g, p)).collect();
        let case = RegularCase::of(r);
        let checks = vec![
            Check::new("grouping: part count", parts.len() == case.part_count(r)),
            Check::new(
                "grouping: per-part degree bound",
                shapes.iter().zip(&grouped.degree_bounds).all(|(s, &b)| s.0 <= b),
            ),
            Check::new("grouping: every part normal", shapes.iter().all(|s| s.1)),
        ];
        self.finish_partition(parts, &shapes, checks, Some(format!("{case:?}")))
    }

    fn finish_partition(
        &mut self,
        parts: &[Vec<EdgeId>],
        shapes: &[(usize, bool)],
        checks: Vec<Check>,
        case: Option<String>,
    ) -> Outcome {
        let pass = checks.iter().all(|c| c.pass);
        let doc = PartitionDocument {
            parts: parts.iter().map(|p| p.iter().map(|e| e.to_string()).collect()).collect(),
            max_degrees: shapes.iter().map(|s| s.0).collect(),
            case,
            checks,
            pass,
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("partition serializes");
        text.push('\n');
        self.emit(text.as_bytes())?;
        Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
    }

    fn oracle(&mut self, input: Option<&Path>) -> Outcome {
        let g = self.read_graph(input)?;
        if g.edge_count() > self.opts.oracle_edge_cap {
            return Err(Failure::check(format!(
                "{} edges exceed the oracle cap {}",
                g.edge_count(),
                self.opts.oracle_edge_cap
            )));
        }
        let cap = (3 * g.max_degree()).max(g.max_degree() + 2);
        let k = exact_chi_a(&g, cap).map_err(|e| Failure::check(e.to_string()))?;
        self.say(&k.to_string())?;
        Ok(EXIT_OK)
    }

    fn gen(&mut self, kind: &GenKind) -> Outcome {
        let seed = self.opts.seed;
        let g = match *kind {
            GenKind::Cycle { n } => generate(&GraphKind::Cycle(n)),
            GenKind::Path { n } => generate(&GraphKind::Path(n)),
            GenKind::Complete { n } => generate(&GraphKind::Complete(n)),
            GenKind::Star { leaves } => Ok(star(leaves)),
            GenKind::Petersen => generate(&GraphKind::Petersen),
            GenKind::Regular { n, r } => generate(&GraphKind::RandomRegular { n, r, seed }),
            GenKind::Gnp { n, p } => generate(&GraphKind::Gnp { n, p, seed }),
        }
        .map_err(|e| Failure::usage(e.to_string()))?;
        let bytes = emit_graph(&g, self.opts.format.unwrap_or(Format::Graph6));
        self.emit(&bytes)?;
        Ok(EXIT_OK)
    }

    fn verify(&mut self, graph: &Path, certificate: &Path) -> Outcome {
        let g = self.read_graph(Some(graph))?;
        let text =
            fs::read_to_string(certificate).map_err(|e| Failure::usage(format!("{}: {e}", certificate.display())))?;
        let cert = AvdCertificate::from_json(&g, &text).map_err(|e| Failure::check(e.to_string()))?;
        match check_certificate(&g, &cert) {
            Ok(()) => {
                self.say(&format!("valid colors={} bound={}", cert.colors_used, cert.bound_claimed))?;
                Ok(EXIT_OK)
            }
            Err(f) => {
                self.say(&format!("invalid: {f}"))?;
                Ok(EXIT_CHECK_FAILED)
            }
        }
    }

    fn audit(&mut self, input: Option<&Path>) -> Outcome {
        let config = AuditConfig {
            oracle_edge_cap: self.opts.oracle_edge_cap,
            color: self.color_config(),
        };
        let reports: Vec<(String, Result<AuditReport, String>)> = match input {
            Some(dir) if dir.is_dir() => {
                let mut files: Vec<PathBuf> = fs::read_dir(dir)
                    .map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.is_file())
                    .collect();
                files.sort();
                audit_files(&files, self.opts.format, &config, self.opts.jobs.max(1))
            }
            _ => {
                let g = self.read_graph(input)?;
                let name = input.map_or("<stdin>".to_string(), |p| p.display().to_string());
                vec![(name, Ok(audit(&g, &config)))]
            }
        };
        let mut pass = true;
        let mut json = Vec::new();
        for (name, report) in &reports {
            self.say(&format!("== {name}"))?;
            match report {
                Ok(r) => {
                    pass &= r.pass();
                    write!(self.stdout, "{}", r.to_text()).map_err(|e| Failure::usage(e.to_string()))?;
                    json.push(serde_json::json!({ "input": name, "pass": r.pass(), "report": r }));
                }
                Err(msg) => {
                    pass = false;
                    self.say(&format!("error: {msg}"))?;
                    json.push(serde_json::json!({ "input": name, "pass": false, "error": msg }));
                }
            }
        }
        if let Some(p) = &self.opts.out {
            let text = serde_json::to_string_pretty(&json).expect("reports serialize") + "\n";
            fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
        }
        Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
    }
}

/// Audits files on `jobs` threads; results come back in input order.
fn audit_files(
    files: &[PathBuf],
    format: Option<Format>,
    config: &AuditConfig,
    jobs: usize,
) -> Vec<(String, Result<AuditReport, String>)> {
    let one = |p: &PathBuf| {
        let result = fs::read(p).map_err(|e| e.to_string()).and_then(|bytes| {
            let f = format.unwrap_or_else(|| Format::sniff(&bytes));
            parse_graph(&bytes, f).map(|g| audit(&g, config)).map_err(|e| e.to_string())
        });
        (p.display().to_string(), result)
    };
    let chunk = files.len().div_ceil(jobs).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = files
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(one).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("audit worker panicked"))
            .collect()
    })
}

fn part_shape(g: &Graph, part: &[EdgeId]) -> (usize, bool) {
    edge_induced(g, part).map_or((usize::MAX, false), |s| (s.graph.max_degree(), s.graph.is_normal()))
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
}

impl Check {
    fn new(name: &'static str, pass: bool) -> Self {
        Check { name, pass }
    }
}

#[derive(Serialize)]
struct PartitionDocument {
    parts: Vec<Vec<String>>,
    max_degrees: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<String>,
    checks: Vec<Check>,
    pass: bool,
}

/// Entry point used by the binary.
pub fn main_exit_code() -> i32 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = run(std::env::args_os(), &mut io::stdin().lock(), &mut out, &mut io::stderr());
    let _ = out.flush();
    code
}
