//! JSON views of library results. Infinity is written as the string
//! `"inf"`, rationals as `"p/q"`.

use num_rational::Ratio;
use racg_core::compare::RatioEntry;
use racg_core::jsj::{HangingSource, Origin};
use racg_core::tangle::SlideTrace;
use racg_core::validate::Witness;
use racg_core::{
    AssumptionReport, CommensurabilityFinding, CylinderClass, DefiningGraph, DensityVector,
    EdgeKind, Error, GraphOfCylinders, Multiplicity, NodeKind, Reason, StructureInvariant,
    Verdict, VertexSet,
};
use serde::{Deserialize, Serialize, Serializer};

fn labels(g: &DefiningGraph, s: VertexSet) -> Vec<String> {
    g.labels_of(s)
}

pub fn multiplicity<S: Serializer>(m: &Multiplicity, s: S) -> Result<S::Ok, S::Error> {
    match m {
        Multiplicity::Finite(n) => s.serialize_u64(*n),
        Multiplicity::Infinite => s.serialize_str("inf"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Mult(#[serde(serialize_with = "multiplicity")] pub Multiplicity);

pub fn ratio_string(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Serialize)]
pub struct ErrorDto {
    pub code: String,
    pub detail: String,
}

impl From<&Error> for ErrorDto {
    fn from(e: &Error) -> Self {
        ErrorDto {
            code: e.code().to_string(),
            detail: e.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum WitnessDto {
    Vertices {
        vertices: Vec<String>,
    },
    Collection {
        collection: Vec<String>,
        pair: [String; 2],
    },
}

#[derive(Debug, Serialize)]
pub struct CheckDto {
    pub id: u8,
    pub code: &'static str,
    pub passed: bool,
    pub witness: Option<WitnessDto>,
}

#[derive(Debug, Serialize)]
pub struct ReportDto {
    pub level: u8,
    pub passed: bool,
    pub checks: Vec<CheckDto>,
}

impl ReportDto {
    pub fn new(g: &DefiningGraph, r: &AssumptionReport) -> Self {
        let checks = r
            .checks
            .iter()
            .map(|c| CheckDto {
                id: c.id.number(),
                code: c.id.code(),
                passed: c.passed,
                witness: c.witness.as_ref().map(|w| match w {
                    Witness::Vertices(vs) => WitnessDto::Vertices {
                        vertices: vs.iter().map(|&v| g.label(v).to_string()).collect(),
                    },
                    Witness::Collection { collection, pair } => WitnessDto::Collection {
                        collection: labels(g, collection.gens()),
                        pair: [g.label(pair.0).to_string(), g.label(pair.1).to_string()],
                    },
                }),
            })
            .collect();
        ReportDto {
            level: r.level,
            passed: r.passed,
            checks,
        }
    }
}

/// Graph-of-cylinders file. Also the input format of `compare --goc`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GocDto {
    pub generators: Vec<String>,
    #[serde(default)]
    pub generator_edges: Vec<(String, String)>,
    pub nodes: Vec<NodeDto>,
    pub edges: Vec<EdgeDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDto {
    /// `CYL`, `HANG` or `RIG`.
    pub kind: String,
    /// `2E`, `VA` or `VFD` for cylinders.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    pub gens: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDto {
    pub cyl: usize,
    pub other: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_gens: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

impl GocDto {
    pub fn new(l: &GraphOfCylinders) -> Self {
        let g = &l.graph;
        GocDto {
            generators: g.labels().to_vec(),
            generator_edges: g
                .edges()
                .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
                .collect(),
            nodes: l
                .nodes
                .iter()
                .map(|n| NodeDto {
                    kind: kind_code(n.kind).to_string(),
                    class: match n.kind {
                        NodeKind::Cylinder(c) => Some(c.label().to_string()),
                        _ => None,
                    },
                    gens: labels(g, n.gens),
                    source: match n.origin {
                        Origin::Hanging(HangingSource::PairwiseSep) => Some("PAIRWISE_SEP".into()),
                        Origin::Hanging(HangingSource::CrossingTriples) => {
                            Some("CROSSING_TRIPLES".into())
                        }
                        _ => None,
                    },
                })
                .collect(),
            edges: l
                .edges
                .iter()
                .map(|e| EdgeDto {
                    cyl: e.cyl,
                    other: e.other,
                    edge_gens: Some(labels(g, e.edge_gens)),
                    kind: Some(e.kind.code().to_string()),
                })
                .collect(),
        }
    }

    /// Rebuilds the graph of cylinders. Edge generators and kinds, when
    /// present, must agree with the node generators.
    pub fn build(&self) -> Result<GraphOfCylinders, Error> {
        let bad = |m: String| Error::InvalidGraphOfCylinders(m);
        let mut b = racg_core::GraphBuilder::default();
        for v in &self.generators {
            b.new_vertex(v)?;
        }
        for (u, v) in &self.generator_edges {
            b.edge_declared(u, v)?;
        }
        let g = b.build()?;
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            let kind = match (n.kind.as_str(), n.class.as_deref()) {
                ("CYL", Some(c)) => NodeKind::Cylinder(
                    CylinderClass::from_label(c)
                        .ok_or_else(|| bad(format!("node {i}: unknown cylinder class {c:?}")))?,
                ),
                ("CYL", None) => return Err(bad(format!("node {i}: cylinder without class"))),
                ("HANG", None) => NodeKind::Hanging,
                ("RIG", None) => NodeKind::Rigid,
                (k, _) => return Err(bad(format!("node {i}: bad kind {k:?}"))),
            };
            let names: Vec<&str> = n.gens.iter().map(String::as_str).collect();
            nodes.push((kind, g.set_of(&names)?));
        }
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.cyl, e.other)).collect();
        let l = GraphOfCylinders::from_parts(g, nodes, &pairs)?;
        for (i, (e, built)) in self.edges.iter().zip(&l.edges).enumerate() {
            if let Some(gens) = &e.edge_gens {
                let names: Vec<&str> = gens.iter().map(String::as_str).collect();
                if l.graph.set_of(&names)? != built.edge_gens {
                    return Err(bad(format!("edge {i}: edge_gens differ from the intersection")));
                }
            }
            if let Some(k) = &e.kind {
                if k != built.kind.code() {
                    return Err(bad(format!("edge {i}: kind {k} but {} generators shared", built.edge_gens.len())));
                }
            }
            if built.cyl != e.cyl {
                return Err(bad(format!("edge {i}: 'cyl' is not the cylinder end")));
            }
        }
        Ok(l)
    }
}

pub fn kind_code(k: NodeKind) -> &'static str {
    match k {
        NodeKind::Cylinder(_) => "CYL",
        NodeKind::Hanging => "HANG",
        NodeKind::Rigid => "RIG",
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeDto {
    pub report: ReportDto,
    pub graph_of_cylinders: Option<GocDto>,
    pub error: Option<ErrorDto>,
}

#[derive(Debug, Serialize)]
pub struct SignatureEntryDto {
    pub class: usize,
    pub kind: &'static str,
    pub mult: Mult,
}

#[derive(Debug, Serialize)]
pub struct ClassDto {
    pub index: usize,
    pub ornament: String,
    pub size: usize,
    pub signature: Vec<SignatureEntryDto>,
    pub density: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub star_certificates: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct InvariantDto {
    pub density_refined: bool,
    pub classes: Vec<ClassDto>,
    pub matrix: Vec<Vec<Mult>>,
    /// Node index to stable class.
    pub class_of: Vec<usize>,
}

impl InvariantDto {
    pub fn new(inv: &StructureInvariant, class_of: &[usize]) -> Self {
        InvariantDto {
            density_refined: inv.density_refined,
            classes: inv
                .classes
                .iter()
                .enumerate()
                .map(|(index, c)| ClassDto {
                    index,
                    ornament: c.ornament.to_string(),
                    size: c.size,
                    signature: c
                        .signature
                        .iter()
                        .map(|&(class, kind, m)| SignatureEntryDto {
                            class,
                            kind: kind.code(),
                            mult: Mult(m),
                        })
                        .collect(),
                    density: match &c.density {
                        DensityVector::Va(v) => Some(v.clone()),
                        DensityVector::None => None,
                    },
                    star_certificates: c.star_certificates.clone(),
                })
                .collect(),
            matrix: inv
                .matrix
                .iter()
                .map(|row| row.iter().map(|&m| Mult(m)).collect())
                .collect(),
            class_of: class_of.to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RatioDto {
    pub va_class: usize,
    pub neighbor_class: usize,
    /// `"p/q"`, or null when only the denominator vanishes.
    pub ratio: Option<String>,
}

impl From<&RatioEntry> for RatioDto {
    fn from(r: &RatioEntry) -> Self {
        RatioDto {
            va_class: r.va_class,
            neighbor_class: r.neighbor_class,
            ratio: r.ratio.map(ratio_string),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReasonDto {
    pub code: &'static str,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratios: Option<Vec<RatioDto>>,
}

#[derive(Debug, Serialize)]
pub struct VerdictDto {
    pub result: &'static str,
    pub reasons: Vec<ReasonDto>,
    pub beta: Option<Vec<[usize; 2]>>,
}

impl From<&Verdict> for VerdictDto {
    fn from(v: &Verdict) -> Self {
        VerdictDto {
            result: v.result.code(),
            reasons: v
                .reasons
                .iter()
                .map(|r| ReasonDto {
                    code: r.code(),
                    detail: r.detail(),
                    ratios: match r {
                        Reason::DensityRatioMismatch { ratios } => {
                            Some(ratios.iter().map(RatioDto::from).collect())
                        }
                        _ => None,
                    },
                })
                .collect(),
            beta: v
                .beta
                .as_ref()
                .map(|b| b.iter().map(|&(x, y)| [x, y]).collect()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FindingDto {
    pub applicable: bool,
    pub i: usize,
    pub j: usize,
    pub deg_v: usize,
    pub deg_v_prime: usize,
    pub obstructed: bool,
}

impl From<&CommensurabilityFinding> for FindingDto {
    fn from(f: &CommensurabilityFinding) -> Self {
        FindingDto {
            applicable: f.applicable,
            i: f.i,
            j: f.j,
            deg_v: f.deg_v,
            deg_v_prime: f.deg_v_prime,
            obstructed: f.obstructed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RecordDto {
    pub origin_level: u32,
    pub final_level: u32,
    pub count: u64,
}

#[derive(Debug, Serialize)]
pub struct LevelDto {
    pub level: u32,
    pub vertices: u64,
    pub kept: u64,
    pub passed: u64,
    pub max_slide: u32,
    pub rule_margin: Option<i64>,
    pub saturated: bool,
}

#[derive(Debug, Serialize)]
pub struct TraceDto {
    pub r: u32,
    pub x1: u64,
    pub y2: u64,
    pub depth: u32,
    pub bound: u32,
    pub max_slide: u32,
    pub records: Vec<RecordDto>,
    pub levels: Vec<LevelDto>,
}

impl From<&SlideTrace> for TraceDto {
    fn from(t: &SlideTrace) -> Self {
        TraceDto {
            r: t.r,
            x1: t.x1,
            y2: t.y2,
            depth: t.depth,
            bound: t.bound,
            max_slide: t.max_slide,
            records: t
                .records
                .iter()
                .map(|r| RecordDto {
                    origin_level: r.origin_level,
                    final_level: r.final_level,
                    count: r.count,
                })
                .collect(),
            levels: t.levels.iter().map(LevelDto::from).collect(),
        }
    }
}

impl From<&racg_core::tangle::LevelStats> for LevelDto {
    fn from(s: &racg_core::tangle::LevelStats) -> Self {
        LevelDto {
            level: s.level,
            vertices: s.vertices,
            kept: s.kept,
            passed: s.passed,
            max_slide: s.max_slide,
            rule_margin: s.rule_margin,
            saturated: s.saturated,
        }
    }
}

pub fn edge_kind_counts(l: &GraphOfCylinders) -> (usize, usize) {
    let d = l.edges.iter().filter(|e| e.kind == EdgeKind::Dinf).count();
    (d, l.edges.len() - d)
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
