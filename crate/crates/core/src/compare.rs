//! Quasi-isometry verdicts and the commensurability obstruction.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::cuts::CylinderClass;
use crate::error::Result;
use crate::graph::DefiningGraph;
use crate::invariant::{compute, DensityVector, StructureInvariant, VertexType};
use crate::jsj::{build_graph_of_cylinders, BuildOptions, EdgeKind, GraphOfCylinders, NodeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    QiYes,
    QiNo,
    Inconclusive,
}

impl VerdictKind {
    pub fn code(self) -> &'static str {
        match self {
            VerdictKind::QiYes => "QI_YES",
            VerdictKind::QiNo => "QI_NO",
            VerdictKind::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// `(2m₁ + n₁) / (2m₂ + n₂)` for one VA class and one neighbour class.
/// `ratio` is `None` when only the denominator vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatioEntry {
    pub va_class: usize,
    pub neighbor_class: usize,
    pub ratio: Option<Ratio<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    InvariantMismatch { detail: String },
    DensityRatioMismatch { ratios: Vec<RatioEntry> },
    RigidPresentUnmatched { classes: Vec<(usize, usize)> },
    TrivialJsj { nodes: (usize, usize) },
}

impl Reason {
    pub fn code(&self) -> &'static str {
        match self {
            Reason::InvariantMismatch { .. } => "INVARIANT_MISMATCH",
            Reason::DensityRatioMismatch { .. } => "DENSITY_RATIO_MISMATCH",
            Reason::RigidPresentUnmatched { .. } => "RIGID_PRESENT_UNMATCHED",
            Reason::TrivialJsj { .. } => "TRIVIAL_JSJ",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Reason::InvariantMismatch { detail } => detail.clone(),
            Reason::DensityRatioMismatch { ratios } => {
                let parts: Vec<String> = ratios
                    .iter()
                    .map(|r| match r.ratio {
                        Some(q) => format!("{}->{}: {}/{}", r.va_class, r.neighbor_class, q.numer(), q.denom()),
                        None => format!("{}->{}: undefined", r.va_class, r.neighbor_class),
                    })
                    .collect();
                format!("VA neighbour ratios differ: {}", parts.join(", "))
            }
            Reason::RigidPresentUnmatched { classes } => format!(
                "rigid classes without matching certificates: {classes:?}"
            ),
            Reason::TrivialJsj { nodes } => format!(
                "graph of cylinders has {} and {} nodes",
                nodes.0, nodes.1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub result: VerdictKind,
    pub reasons: Vec<Reason>,
    /// Class bijection `(class in first, class in second)` when QI.
    pub beta: Option<Vec<(usize, usize)>>,
}

impl Verdict {
    fn new(result: VerdictKind, reasons: Vec<Reason>, beta: Option<Vec<usize>>) -> Self {
        Verdict {
            result,
            reasons,
            beta: beta.map(|b| b.into_iter().enumerate().collect()),
        }
    }
}

const KINDS: [EdgeKind; 2] = [EdgeKind::Dinf, EdgeKind::DinfXZ2];

/// Searches a bijection of stable classes preserving ornaments, kind-resolved
/// signatures and (for density-refined invariants) density vectors. `extra`
/// can veto individual class pairs.
pub fn find_beta<F>(a: &StructureInvariant, b: &StructureInvariant, extra: F) -> Option<Vec<usize>>
where
    F: Fn(usize, usize) -> bool,
{
    let k = a.class_count();
    if k != b.class_count() {
        return None;
    }
    let mut beta = vec![usize::MAX; k];
    let mut used = vec![false; k];
    if assign(a, b, &extra, 0, &mut beta, &mut used) {
        Some(beta)
    } else {
        None
    }
}

fn assign<F: Fn(usize, usize) -> bool>(
    a: &StructureInvariant,
    b: &StructureInvariant,
    extra: &F,
    j: usize,
    beta: &mut [usize],
    used: &mut [bool],
) -> bool {
    if j == beta.len() {
        return true;
    }
    for jp in 0..beta.len() {
        if used[jp] || !compatible(a, b, j, jp, beta) || !extra(j, jp) {
            continue;
        }
        beta[j] = jp;
        used[jp] = true;
        if assign(a, b, extra, j + 1, beta, used) {
            return true;
        }
        used[jp] = false;
        beta[j] = usize::MAX;
    }
    false
}

fn density_entry(d: &DensityVector, k: usize) -> Option<u64> {
    match d {
        DensityVector::None => None,
        DensityVector::Va(v) => Some(v[k]),
    }
}

fn compatible(a: &StructureInvariant, b: &StructureInvariant, j: usize, jp: usize, beta: &[usize]) -> bool {
    let (ca, cb) = (&a.classes[j], &b.classes[jp]);
    if ca.ornament != cb.ornament
        || ca.signature.len() != cb.signature.len()
        || matches!(ca.density, DensityVector::None) != matches!(cb.density, DensityVector::None)
    {
        return false;
    }
    let check = |k: usize, kp: usize| {
        KINDS.iter().all(|&e| {
            a.entry(j, k, e) == b.entry(jp, kp, e) && a.entry(k, j, e) == b.entry(kp, jp, e)
        }) && (!a.density_refined
            || (density_entry(&ca.density, k) == density_entry(&cb.density, kp)
                && density_entry(&a.classes[k].density, j)
                    == density_entry(&b.classes[kp].density, jp)))
    };
    check(j, jp)
        && beta
            .iter()
            .enumerate()
            .filter(|&(_, &bk)| bk != usize::MAX)
            .all(|(k, &kp)| check(k, kp))
}

/// Ratio of raw `2m + n` values across `beta` for every VA class and every
/// neighbour class where either side is non-zero.
pub fn va_ratio_table(a: &StructureInvariant, b: &StructureInvariant, beta: &[usize]) -> Vec<RatioEntry> {
    let mut out = Vec::new();
    for (j, class) in a.classes.iter().enumerate() {
        let (Some(ra), Some(rb)) = (&class.raw_density, &b.classes[beta[j]].raw_density) else {
            continue;
        };
        for (k, &num) in ra.iter().enumerate() {
            let den = rb[beta[k]];
            if num == 0 && den == 0 {
                continue;
            }
            out.push(RatioEntry {
                va_class: j,
                neighbor_class: k,
                ratio: (den != 0).then(|| Ratio::new(num, den)),
            });
        }
    }
    out
}

fn is_rigid_class(inv: &StructureInvariant, j: usize) -> bool {
    inv.classes[j].ornament.vertex_type == VertexType::Rig
}

/// Compares two graphs of cylinders.
pub fn compare(x: &GraphOfCylinders, y: &GraphOfCylinders) -> Verdict {
    let (nx, ny) = (x.node_count(), y.node_count());
    if nx <= 1 || ny <= 1 {
        let same_cylinder = nx == 1
            && ny == 1
            && matches!(x.nodes[0].kind, NodeKind::Cylinder(_))
            && x.nodes[0].kind == y.nodes[0].kind;
        return if same_cylinder {
            Verdict::new(VerdictKind::QiYes, vec![], Some(vec![0]))
        } else {
            Verdict::new(
                VerdictKind::Inconclusive,
                vec![Reason::TrivialJsj { nodes: (nx, ny) }],
                None,
            )
        };
    }

    let (_, a) = compute(x, true);
    let (_, b) = compute(y, true);
    let Some(beta) = find_beta(&a, &b, |_, _| true) else {
        return Verdict::new(VerdictKind::QiNo, vec![mismatch_reason(x, y, &a, &b)], None);
    };
    if !a.has_rigid() && !b.has_rigid() {
        return Verdict::new(VerdictKind::QiYes, vec![], Some(beta));
    }
    let stars = |j: usize, jp: usize| {
        !is_rigid_class(&a, j) || a.classes[j].star_certificates == b.classes[jp].star_certificates
    };
    if let Some(beta) = find_beta(&a, &b, stars) {
        return Verdict::new(VerdictKind::QiYes, vec![], Some(beta));
    }
    let classes = (0..beta.len())
        .filter(|&j| is_rigid_class(&a, j) && !stars(j, beta[j]))
        .map(|j| (j, beta[j]))
        .collect();
    Verdict::new(
        VerdictKind::Inconclusive,
        vec![Reason::RigidPresentUnmatched { classes }],
        None,
    )
}

fn mismatch_reason(
    x: &GraphOfCylinders,
    y: &GraphOfCylinders,
    a: &StructureInvariant,
    b: &StructureInvariant,
) -> Reason {
    let (_, na) = compute(x, false);
    let (_, nb) = compute(y, false);
    if let Some(beta0) = find_beta(&na, &nb, |_, _| true) {
        return Reason::DensityRatioMismatch {
            ratios: va_ratio_table(&na, &nb, &beta0),
        };
    }
    let mut oa: Vec<String> = a.classes.iter().map(|c| format!("{}", c.ornament)).collect();
    let mut ob: Vec<String> = b.classes.iter().map(|c| format!("{}", c.ornament)).collect();
    oa.sort();
    ob.sort();
    let detail = if a.class_count() != b.class_count() {
        format!("{} stable classes vs {}", a.class_count(), b.class_count())
    } else if oa != ob {
        let first = oa
            .iter()
            .zip(&ob)
            .find(|(p, q)| p != q)
            .map(|(p, q)| format!("{p} vs {q}"))
            .unwrap_or_default();
        format!("class ornaments differ: {first}")
    } else {
        String::from("no class bijection preserves the structure matrix")
    };
    Reason::InvariantMismatch { detail }
}

/// Builds both graphs of cylinders and compares them.
pub fn compare_graphs(x: &DefiningGraph, y: &DefiningGraph, opts: BuildOptions) -> Result<Verdict> {
    let gx = build_graph_of_cylinders(x, opts)?;
    let gy = build_graph_of_cylinders(y, opts)?;
    Ok(compare(&gx, &gy))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommensurabilityFinding {
    pub applicable: bool,
    pub i: usize,
    pub j: usize,
    pub deg_v: usize,
    pub deg_v_prime: usize,
    pub obstructed: bool,
}

/// `j > 16 (i - 1) deg_v' / deg_v + 1` in exact arithmetic.
pub fn commensurability_inequality(i: usize, deg_v: usize, j: usize, deg_v_prime: usize) -> bool {
    if deg_v == 0 || i == 0 {
        return false;
    }
    let bound = Ratio::new(16 * (i as u128 - 1) * deg_v_prime as u128, deg_v as u128)
        + Ratio::from_integer(1);
    Ratio::from_integer(j as u128) > bound
}

fn single_vfd(goc: &GraphOfCylinders) -> Option<(usize, usize)> {
    let mut it = goc
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| n.kind == NodeKind::Cylinder(CylinderClass::Vfd));
    let (v, n) = it.next()?;
    if it.next().is_some() {
        return None;
    }
    Some((n.gens.len().saturating_sub(3), goc.degree(v)))
}

/// Applies when each side has exactly one VFD cylinder node; `i` and `j`
/// are the free ranks `|C| - 1`, ordered so `i <= j`.
pub fn commensurability_obstruction(x: &GraphOfCylinders, y: &GraphOfCylinders) -> CommensurabilityFinding {
    let none = CommensurabilityFinding {
        applicable: false,
        i: 0,
        j: 0,
        deg_v: 0,
        deg_v_prime: 0,
        obstructed: false,
    };
    let (Some(p), Some(q)) = (single_vfd(x), single_vfd(y)) else {
        return none;
    };
    let ((i, dv), (j, dvp)) = if p.0 <= q.0 { (p, q) } else { (q, p) };
    if dv == 0 || dvp == 0 {
        return CommensurabilityFinding { i, j, deg_v: dv, deg_v_prime: dvp, ..none };
    }
    CommensurabilityFinding {
        applicable: true,
        i,
        j,
        deg_v: dv,
        deg_v_prime: dvp,
        obstructed: commensurability_inequality(i, dv, j, dvp)
            || commensurability_inequality(j, dvp, i, dv),
    }
}
