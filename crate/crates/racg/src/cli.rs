//! Command-line front end. Exit codes: 0 success, 1 analysis failure,
//! 2 usage, IO or parse error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use racg_core::compare::commensurability_obstruction;
use racg_core::invariant::compute;
use racg_core::jsj::{Origin, DEFAULT_RIGID_CAP};
use racg_core::tangle::simulate_slides;
use racg_core::{
    build_graph_of_cylinders, compare, validate, BuildOptions, DefiningGraph, Error,
    GraphOfCylinders, NodeKind,
};
use serde::Serialize;

use crate::corpus::{run_corpus, write_random_corpus};
use crate::dot::export_dot;
use crate::dto::{
    kind_code, to_json, AnalyzeDto, ErrorDto, FindingDto, GocDto, InvariantDto, LevelDto,
    ReportDto, TraceDto, VerdictDto,
};
use crate::formats::{parse_graph, sniff, Format};

pub const RIGID_CAP_VAR: &str = "RACG_RIGID_CAP";

#[derive(Debug, Parser)]
#[command(name = "racg", version, about = "Graphs of cylinders and QI invariants for right-angled Coxeter groups")]
pub struct Cli {
    /// Input graph format; guessed from extension and content when absent.
    #[arg(long, global = true, value_enum)]
    pub input_format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AnalyzeFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SummaryFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the standing assumptions and list the graph of cylinders.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: AnalyzeFormat,
    },
    /// Structure invariant as JSON.
    Invariant {
        file: PathBuf,
        /// Apply density refinement.
        #[arg(long)]
        density: bool,
        /// Input is a graph-of-cylinders JSON file.
        #[arg(long)]
        goc: bool,
    },
    /// Decide QI, non-QI or inconclusive.
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Inputs are graph-of-cylinders JSON files.
        #[arg(long)]
        goc: bool,
    },
    /// Commensurability obstruction between single-VFD inputs.
    Commens {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        goc: bool,
    },
    /// Simulate tangling-edge slides on a regular tree.
    Tangle {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        x1: u64,
        #[arg(long)]
        y2: u64,
        #[arg(long)]
        depth: u32,
        /// Also write the per-level histogram as CSV.
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
    /// Render the graph of cylinders.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: ExportFormat,
    },
    /// Check every graph in a directory against its sidecar.
    Corpus {
        dir: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: SummaryFormat,
    },
    /// Write random connected graphs with snapshot sidecars.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 9)]
        max_vertices: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A failed invocation.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1, with an optional JSON payload for stdout.
    Analysis(String, Option<String>),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Analysis(..) => 1,
        }
    }
}

fn analysis(e: &Error) -> Failure {
    Failure::Analysis(format!("{}: {e}", e.code()), Some(to_json(&ErrorDto::from(e))))
}

pub struct Context {
    pub input_format: Option<Format>,
    pub opts: BuildOptions,
}

impl Context {
    fn read(&self, path: &Path) -> Result<String, Failure> {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("IO_ERROR: {}: {e}", path.display())))
    }

    pub fn graph(&self, path: &Path) -> Result<DefiningGraph, Failure> {
        let text = self.read(path)?;
        let format = self.input_format.unwrap_or_else(|| sniff(Some(path), &text));
        parse_graph(&text, format)
            .map_err(|e| Failure::Usage(format!("{}: {}: {e}", e.code(), path.display())))
    }

    pub fn goc_file(&self, path: &Path) -> Result<GraphOfCylinders, Failure> {
        let text = self.read(path)?;
        let dto: GocDto = serde_json::from_str(&text).map_err(|e| {
            Failure::Usage(format!("PARSE_ERROR: {}: line {}: {e}", path.display(), e.line()))
        })?;
        dto.build().map_err(|e| analysis(&e))
    }

    fn build(&self, g: &DefiningGraph) -> Result<GraphOfCylinders, Failure> {
        build_graph_of_cylinders(g, self.opts).map_err(|e| analysis(&e))
    }

    fn goc(&self, path: &Path, goc: bool) -> Result<GraphOfCylinders, Failure> {
        if goc {
            self.goc_file(path)
        } else {
            self.build(&self.graph(path)?)
        }
    }
}

/// Rigid cap from `RACG_RIGID_CAP`, defaulting to the library value.
pub fn rigid_cap(value: Option<OsString>) -> Result<usize, Failure> {
    match value {
        None => Ok(DEFAULT_RIGID_CAP),
        Some(v) => v
            .to_str()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Failure::Usage(format!("{RIGID_CAP_VAR} must be a non-negative integer"))),
    }
}

fn braces(items: Vec<String>) -> String {
    format!("{{{}}}", items.join(","))
}

fn analyze_text(g: &DefiningGraph, report: &ReportDto, l: Option<&GraphOfCylinders>) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "assumptions (level {}): {}",
        report.level,
        if report.passed { "passed" } else { "failed" }
    );
    for c in &report.checks {
        let w = c
            .witness
            .as_ref()
            .map(|w| format!("  witness {}", serde_json::to_string(w).unwrap()))
            .unwrap_or_default();
        let _ = writeln!(s, "  check {} {}: {}{w}", c.id, c.code, if c.passed { "ok" } else { "FAILED" });
    }
    let Some(l) = l else { return s };
    let _ = writeln!(s, "nodes:");
    for (i, n) in l.nodes.iter().enumerate() {
        let class = match n.kind {
            NodeKind::Cylinder(c) => format!(" {c}"),
            _ => String::new(),
        };
        let source = match n.origin {
            Origin::Hanging(src) => format!(" {}", src.code()),
            _ => String::new(),
        };
        let _ = writeln!(s, "  {i} {}{class} {}{source}", kind_code(n.kind), braces(g.labels_of(n.gens)));
    }
    let _ = writeln!(s, "edges:");
    for e in &l.edges {
        let _ = writeln!(s, "  {} -- {} {} {}", e.cyl, e.other, e.kind.code(), braces(g.labels_of(e.edge_gens)));
    }
    s
}

fn analyze(ctx: &Context, file: &Path, format: AnalyzeFormat) -> Result<String, Failure> {
    let g = ctx.graph(file)?;
    let report = validate(&g, 3);
    let dto = ReportDto::new(&g, &report);
    let built = report.passed.then(|| build_graph_of_cylinders(&g, ctx.opts));
    let (l, err) = match built {
        Some(Ok(l)) => (Some(l), None),
        Some(Err(e)) => (None, Some(e)),
        None => (None, None),
    };
    let out = match format {
        AnalyzeFormat::Text => {
            let mut s = analyze_text(&g, &dto, l.as_ref());
            if let Some(e) = &err {
                let _ = writeln!(s, "error: {}: {e}", e.code());
            }
            s
        }
        AnalyzeFormat::Json => to_json(&AnalyzeDto {
            report: dto,
            graph_of_cylinders: l.as_ref().map(GocDto::new),
            error: err.as_ref().map(ErrorDto::from),
        }),
        AnalyzeFormat::Dot => match &l {
            Some(l) => export_dot(l),
            None => String::new(),
        },
    };
    if let Some(e) = err {
        return Err(Failure::Analysis(format!("{}: {e}", e.code()), Some(out)));
    }
    if !report.passed {
        let failed: Vec<String> = report.failed().map(|c| c.id.code().to_string()).collect();
        return Err(Failure::Analysis(
            format!("ASSUMPTIONS_FAILED: {}", failed.join(", ")),
            Some(out),
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct HistogramRow {
    level: u32,
    vertices: u64,
    kept: u64,
    passed: u64,
    max_slide: u32,
    rule_margin: Option<i64>,
    saturated: bool,
}

fn write_histogram(path: &Path, levels: &[LevelDto]) -> Result<(), Failure> {
    let io = |e: csv::Error| Failure::Usage(format!("IO_ERROR: {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    for l in levels {
        w.serialize(HistogramRow {
            level: l.level,
            vertices: l.vertices,
            kept: l.kept,
            passed: l.passed,
            max_slide: l.max_slide,
            rule_margin: l.rule_margin,
            saturated: l.saturated,
        })
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Failure::Usage(format!("IO_ERROR: {}: {e}", path.display())))
}

pub fn execute(cli: Cli, opts: BuildOptions) -> Result<String, Failure> {
    let ctx = Context {
        input_format: cli.input_format,
        opts,
    };
    match cli.command {
        Command::Analyze { file, format } => analyze(&ctx, &file, format),
        Command::Invariant { file, density, goc } => {
            let l = ctx.goc(&file, goc)?;
            let (d, inv) = compute(&l, density);
            Ok(to_json(&InvariantDto::new(&inv, &d.class_of)))
        }
        Command::Compare { first, second, goc } => {
            let x = ctx.goc(&first, goc)?;
            let y = ctx.goc(&second, goc)?;
            Ok(to_json(&VerdictDto::from(&compare(&x, &y))))
        }
        Command::Commens { first, second, goc } => {
            let x = ctx.goc(&first, goc)?;
            let y = ctx.goc(&second, goc)?;
            Ok(to_json(&FindingDto::from(&commensurability_obstruction(&x, &y))))
        }
        Command::Tangle {
            r,
            x1,
            y2,
            depth,
            histogram,
        } => {
            let t = simulate_slides(r, x1, y2, depth)
                .map_err(|e| Failure::Usage(format!("{}: {e}", e.code())))?;
            let dto = TraceDto::from(&t);
            if let Some(p) = histogram {
                write_histogram(&p, &dto.levels)?;
            }
            Ok(to_json(&dto))
        }
        Command::Export { file, format } => {
            let l = ctx.build(&ctx.graph(&file)?)?;
            Ok(match format {
                ExportFormat::Dot => export_dot(&l),
                ExportFormat::Json => to_json(&GocDto::new(&l)),
            })
        }
        Command::Corpus { dir, format } => {
            let summary = run_corpus(&dir, opts)
                .map_err(|e| Failure::Usage(format!("IO_ERROR: {}: {e}", dir.display())))?;
            let out = match format {
                SummaryFormat::Text => summary.table(),
                SummaryFormat::Json => to_json(&summary),
            };
            if summary.all_passed() {
                Ok(out)
            } else {
                let failed = summary.entries.iter().filter(|e| !e.passed).count();
                Err(Failure::Analysis(format!("{failed} corpus entries failed"), Some(out)))
            }
        }
        Command::Random {
            seed,
            count,
            max_vertices,
            out,
        } => {
            if !(4..=racg_core::MAX_VERTICES).contains(&max_vertices) {
                return Err(Failure::Usage("--max-vertices must be between 4 and 128".into()));
            }
            let paths = write_random_corpus(&out, seed, count, max_vertices, opts)
                .map_err(|e| Failure::Usage(format!("IO_ERROR: {}: {e}", out.display())))?;
            let mut s = String::new();
            for p in paths {
                let _ = writeln!(s, "{}", p.display());
            }
            Ok(s)
        }
    }
}

/// Runs one invocation, writing the payload to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run<I, T>(args: I, cap: Option<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let result = rigid_cap(cap).and_then(|rigid_cap| execute(cli, BuildOptions { rigid_cap }));
    match result {
        Ok(payload) => {
            let _ = out.write_all(payload.as_bytes());
            0
        }
        Err(f) => {
            match &f {
                Failure::Usage(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                }
                Failure::Analysis(msg, payload) => {
                    if let Some(p) = payload {
                        let _ = out.write_all(p.as_bytes());
                    }
                    let _ = writeln!(err, "error: {msg}");
                }
            }
            f.exit_code()
        }
    }
}
