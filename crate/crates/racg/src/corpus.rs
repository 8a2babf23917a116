//! Corpus runner: graph files checked against `NAME.expect.json` sidecars.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use racg_core::invariant::compute;
use racg_core::{build_graph_of_cylinders, validate, BuildOptions, DefiningGraph, GraphOfCylinders, NodeKind};
use serde::{Deserialize, Serialize};

use crate::dto::{edge_kind_counts, InvariantDto};
use crate::formats::{parse_graph, serialize_graph, sniff, Format};

pub const SIDECAR: &str = ".expect.json";

/// Expected results. Every field is optional; only present fields are
/// checked.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_checks: Option<Vec<u8>>,
    /// Analysis error code when the graph passes validation but the build
    /// fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cylinders: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hanging: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rigid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<BTreeMap<String, usize>>,
    /// Density-refined structure matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub entries: Vec<Entry>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn table(&self) -> String {
        let width = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(4).max(4);
        let mut s = String::new();
        for e in &self.entries {
            let _ = writeln!(
                s,
                "{:width$}  {}  {}",
                e.name,
                if e.passed { "PASS" } else { "FAIL" },
                e.detail
            );
        }
        let passed = self.entries.iter().filter(|e| e.passed).count();
        let _ = writeln!(s, "{passed}/{} passed", self.entries.len());
        s
    }
}

fn cylinder_counts(l: &GraphOfCylinders) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for c in ["2E", "VA", "VFD"] {
        m.insert(c.to_string(), 0);
    }
    for n in &l.nodes {
        if let NodeKind::Cylinder(c) = n.kind {
            *m.get_mut(c.label()).unwrap() += 1;
        }
    }
    m
}

/// The full expectation the library currently produces for `g`.
pub fn observe(g: &DefiningGraph, opts: BuildOptions) -> Expectation {
    let report = validate(g, 3);
    let mut e = Expectation {
        valid: Some(report.passed),
        failed_checks: Some(report.failed().map(|c| c.id.number()).collect()),
        ..Expectation::default()
    };
    if !report.passed {
        return e;
    }
    match build_graph_of_cylinders(g, opts) {
        Err(err) => e.error = Some(err.code().to_string()),
        Ok(l) => {
            let (dinf, dinf_z2) = edge_kind_counts(&l);
            e.cylinders = Some(cylinder_counts(&l));
            e.hanging = Some(l.count(NodeKind::Hanging));
            e.rigid = Some(l.count(NodeKind::Rigid));
            e.edges = Some(BTreeMap::from([
                ("DINF".to_string(), dinf),
                ("DINF_X_Z2".to_string(), dinf_z2),
            ]));
            let (d, inv) = compute(&l, true);
            e.matrix = Some(serde_json::to_value(InvariantDto::new(&inv, &d.class_of).matrix).unwrap());
        }
    }
    e
}

/// Names of the fields where `observed` disagrees with `want`.
pub fn mismatches(want: &Expectation, observed: &Expectation) -> Vec<String> {
    let mut out = Vec::new();
    macro_rules! field {
        ($f:ident) => {
            if let Some(w) = &want.$f {
                if observed.$f.as_ref() != Some(w) {
                    out.push(format!(
                        "{}: expected {}, got {}",
                        stringify!($f),
                        serde_json::to_string(w).unwrap(),
                        serde_json::to_string(&observed.$f).unwrap()
                    ));
                }
            }
        };
    }
    field!(valid);
    field!(failed_checks);
    field!(error);
    field!(cylinders);
    field!(hanging);
    field!(rigid);
    field!(edges);
    field!(matrix);
    out
}

fn is_graph_file(p: &Path) -> bool {
    p.is_file()
        && p.file_name()
            .and_then(|n| n.to_str())
            .is_some_and(|n| !n.ends_with(SIDECAR) && !n.starts_with('.'))
}

fn sidecar_path(p: &Path) -> PathBuf {
    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    p.with_file_name(format!("{stem}{SIDECAR}"))
}

fn check_file(path: &Path, opts: BuildOptions) -> Result<String, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("IO_ERROR: {e}"))?;
    let g = parse_graph(&text, sniff(Some(path), &text))
        .map_err(|e| format!("{}: {e}", e.code()))?;
    let side = sidecar_path(path);
    let want_text = fs::read_to_string(&side)
        .map_err(|e| format!("MISSING_EXPECTATION: {}: {e}", side.display()))?;
    let want: Expectation = serde_json::from_str(&want_text)
        .map_err(|e| format!("BAD_EXPECTATION: {e}"))?;
    let observed = observe(&g, opts);
    let bad = mismatches(&want, &observed);
    if bad.is_empty() {
        Ok(format!("{} vertices, {} edges", g.vertex_count(), g.edge_count()))
    } else {
        Err(bad.join("; "))
    }
}

/// Checks every graph file of `dir` in file-name order.
pub fn run_corpus(dir: &Path, opts: BuildOptions) -> io::Result<Summary> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| is_graph_file(p))
        .collect();
    files.sort();
    let entries = files
        .iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            match check_file(p, opts) {
                Ok(detail) => Entry {
                    name,
                    passed: true,
                    detail,
                },
                Err(detail) => Entry {
                    name,
                    passed: false,
                    detail,
                },
            }
        })
        .collect();
    Ok(Summary { entries })
}

/// A random connected graph with `n` vertices: a random tree plus extra
/// edges with probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DefiningGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    DefiningGraph::from_index_edges(n, &edges).expect("at most 128 vertices")
}

/// Writes `count` random graphs with snapshot sidecars of the current
/// library output. Returns the written graph paths.
pub fn write_random_corpus(
    dir: &Path,
    seed: u64,
    count: usize,
    max_vertices: usize,
    opts: BuildOptions,
) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let n = rng.gen_range(4..=max_vertices.max(4));
        let p = rng.gen_range(0.05..0.45);
        let g = random_graph(&mut rng, n, p);
        let path = dir.join(format!("random_{seed}_{i:04}.txt"));
        fs::write(&path, serialize_graph(&g, Format::EdgeList))?;
        let side = sidecar_path(&path);
        fs::write(&side, crate::dto::to_json(&observe(&g, opts)))?;
        out.push(path);
    }
    Ok(out)
}
