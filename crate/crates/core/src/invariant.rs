//! Decorations, neighbour and density refinement, and the structure
//! invariant of a graph of cylinders.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use num_integer::Integer;

use crate::canon::certificate;
use crate::cuts::CylinderClass;
use crate::error::{Error, Result};
use crate::jsj::{EdgeKind, GraphOfCylinders, NodeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexType {
    Cyl,
    Hang,
    Rig,
}

impl VertexType {
    pub fn code(self) -> &'static str {
        match self {
            VertexType::Cyl => "CYL",
            VertexType::Hang => "HANG",
            VertexType::Rig => "RIG",
        }
    }
}

/// Vertex type plus a computable stand-in for the relative QI-type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ornament {
    pub vertex_type: VertexType,
    pub qi_label: String,
}

impl fmt::Display for Ornament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.vertex_type.code(), self.qi_label)
    }
}

/// A natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub const ZERO: Multiplicity = Multiplicity::Finite(0);

    pub fn is_zero(self) -> bool {
        self == Multiplicity::ZERO
    }
}

impl Add for Multiplicity {
    type Output = Multiplicity;
    fn add(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => a
                .checked_add(b)
                .map_or(Multiplicity::Infinite, Multiplicity::Finite),
            _ => Multiplicity::Infinite,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

/// Sorted `(class, edge kind, multiplicity)` entries; zero entries omitted.
pub type Signature = Vec<(usize, EdgeKind, Multiplicity)>;

/// Normalized `2m + n` vector of a VA cylinder, indexed by class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DensityVector {
    None,
    Va(Vec<u64>),
}

impl DensityVector {
    pub fn normalized(raw: Vec<u64>) -> Self {
        let g = raw.iter().fold(0u64, |g, &x| g.gcd(&x));
        if g > 1 {
            DensityVector::Va(raw.into_iter().map(|x| x / g).collect())
        } else {
            DensityVector::Va(raw)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecorationClass {
    pub ornament: Ornament,
    /// Signature of the first member toward the current classes.
    pub signature: Signature,
}

/// Assignment of nodes to classes, classes in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoration {
    pub class_of: Vec<usize>,
    pub classes: Vec<DecorationClass>,
}

impl Decoration {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == class)
            .map(|(v, _)| v)
    }

    /// Builds a decoration from per-node keys: classes are the distinct keys
    /// in sorted order.
    fn from_keys<K: Ord + Clone>(goc: &GraphOfCylinders, keys: &[K]) -> Decoration {
        let mut distinct: Vec<K> = keys.to_vec();
        distinct.sort();
        distinct.dedup();
        let class_of: Vec<usize> = keys
            .iter()
            .map(|k| distinct.binary_search(k).unwrap())
            .collect();
        let mut d = Decoration {
            class_of,
            classes: Vec::new(),
        };
        d.classes = (0..distinct.len())
            .map(|c| {
                let v = d.members(c).next().unwrap();
                DecorationClass {
                    ornament: ornament(goc, v),
                    signature: Vec::new(),
                }
            })
            .collect();
        for c in 0..distinct.len() {
            let v = d.members(c).next().unwrap();
            d.classes[c].signature = signature(goc, &d.class_of, v);
        }
        d
    }
}

/// Number of tree edges in the orbit of `edge` at a lift of `node`.
pub fn tree_multiplicity(goc: &GraphOfCylinders, node: usize, edge: usize) -> Multiplicity {
    let n = &goc.nodes[node];
    match n.kind {
        NodeKind::Cylinder(CylinderClass::TwoEnded) => {
            let e = goc.edges[edge].edge_gens;
            let k = n.gens.len().saturating_sub(e.len());
            1u64.checked_shl(k as u32)
                .map_or(Multiplicity::Infinite, Multiplicity::Finite)
        }
        _ => Multiplicity::Infinite,
    }
}

/// Signature of node `v` with respect to `class_of`.
pub fn signature(goc: &GraphOfCylinders, class_of: &[usize], v: usize) -> Signature {
    let mut acc: BTreeMap<(usize, EdgeKind), Multiplicity> = BTreeMap::new();
    for e in goc.incident(v) {
        let w = goc.opposite(e, v);
        let key = (class_of[w], goc.edges[e].kind);
        let m = tree_multiplicity(goc, v, e);
        let slot = acc.entry(key).or_insert(Multiplicity::ZERO);
        *slot = *slot + m;
    }
    acc.into_iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|((c, k), m)| (c, k, m))
        .collect()
}

/// Certificate of a rigid node: its induced subgraph with each incident
/// edge group marked.
pub fn rigid_certificate(goc: &GraphOfCylinders, v: usize) -> String {
    let b = goc.nodes[v].gens;
    let marked: Vec<(u32, _)> = goc
        .incident(v)
        .map(|e| (0, goc.edges[e].edge_gens))
        .collect();
    certificate(&goc.graph, b, &marked)
}

/// Certificate of a rigid node together with its adjacent cylinders.
pub fn rigid_star_certificate(goc: &GraphOfCylinders, v: usize) -> String {
    let b = goc.nodes[v].gens;
    let mut base = b;
    let mut marked = vec![(0u32, b)];
    for e in goc.incident(v) {
        let c = goc.opposite(e, v);
        let gens = goc.nodes[c].gens;
        base |= gens;
        marked.push((1, goc.edges[e].edge_gens));
        marked.push((2 + goc_class_tag(goc.nodes[c].kind), gens));
    }
    certificate(&goc.graph, base, &marked)
}

fn goc_class_tag(kind: NodeKind) -> u32 {
    match kind {
        NodeKind::Cylinder(CylinderClass::TwoEnded) => 0,
        NodeKind::Cylinder(CylinderClass::Va) => 1,
        NodeKind::Cylinder(CylinderClass::Vfd) => 2,
        NodeKind::Hanging => 3,
        NodeKind::Rigid => 4,
    }
}

/// Initial ornament of node `v`.
pub fn ornament(goc: &GraphOfCylinders, v: usize) -> Ornament {
    let n = &goc.nodes[v];
    match n.kind {
        NodeKind::Cylinder(c) => Ornament {
            vertex_type: VertexType::Cyl,
            qi_label: String::from(c.label()),
        },
        NodeKind::Hanging => Ornament {
            vertex_type: VertexType::Hang,
            qi_label: String::from("VF"),
        },
        NodeKind::Rigid => Ornament {
            vertex_type: VertexType::Rig,
            qi_label: rigid_certificate(goc, v),
        },
    }
}

/// Classes keyed by initial ornament.
pub fn initial_decoration(goc: &GraphOfCylinders) -> Decoration {
    let keys: Vec<Ornament> = (0..goc.node_count()).map(|v| ornament(goc, v)).collect();
    Decoration::from_keys(goc, &keys)
}

/// One refinement round: split classes by signature.
fn refine_once(goc: &GraphOfCylinders, d: &Decoration) -> Decoration {
    let keys: Vec<(usize, Signature)> = (0..goc.node_count())
        .map(|v| (d.class_of[v], signature(goc, &d.class_of, v)))
        .collect();
    Decoration::from_keys(goc, &keys)
}

/// Partitions after each neighbour-refinement round, starting with `d`
/// itself and ending at the fixpoint.
pub fn neighbor_refine_rounds(goc: &GraphOfCylinders, d: &Decoration) -> Vec<Decoration> {
    let mut rounds = vec![d.clone()];
    loop {
        let last = rounds.last().unwrap();
        let next = refine_once(goc, last);
        if next.class_count() == last.class_count() {
            // The partition is unchanged; keep the recomputed signatures.
            *rounds.last_mut().unwrap() = next;
            return rounds;
        }
        rounds.push(next);
    }
}

/// Neighbour refinement to a fixpoint.
pub fn neighbor_refine(goc: &GraphOfCylinders, d: &Decoration) -> Decoration {
    neighbor_refine_rounds(goc, d).pop().unwrap()
}

/// Raw `2m + n` vector of a VA node over the classes of `d`; `None` for
/// other nodes.
pub fn raw_density(goc: &GraphOfCylinders, d: &Decoration, v: usize) -> Option<Vec<u64>> {
    if goc.nodes[v].kind != NodeKind::Cylinder(CylinderClass::Va) {
        return None;
    }
    let mut raw = vec![0u64; d.class_count()];
    for e in goc.incident(v) {
        let w = goc.opposite(e, v);
        raw[d.class_of[w]] += match goc.edges[e].kind {
            EdgeKind::Dinf => 2,
            EdgeKind::DinfXZ2 => 1,
        };
    }
    Some(raw)
}

/// Normalized density vectors of every node with respect to `d`.
pub fn density_vectors(goc: &GraphOfCylinders, d: &Decoration) -> Vec<DensityVector> {
    (0..goc.node_count())
        .map(|v| match raw_density(goc, d, v) {
            Some(raw) => DensityVector::normalized(raw),
            None => DensityVector::None,
        })
        .collect()
}

/// Alternates neighbour refinement and splitting by density vectors until
/// neither changes the partition.
pub fn density_refine(goc: &GraphOfCylinders) -> (Decoration, Vec<DensityVector>) {
    let (mut rounds, nu) = density_refine_rounds(goc);
    (rounds.pop().unwrap(), nu)
}

/// Every intermediate decoration of [`density_refine`], starting with the
/// initial decoration, together with the final density vectors.
pub fn density_refine_rounds(goc: &GraphOfCylinders) -> (Vec<Decoration>, Vec<DensityVector>) {
    let mut rounds = neighbor_refine_rounds(goc, &initial_decoration(goc));
    loop {
        let d = rounds.last().unwrap();
        let nu = density_vectors(goc, d);
        let keys: Vec<(usize, DensityVector)> = (0..goc.node_count())
            .map(|v| (d.class_of[v], nu[v].clone()))
            .collect();
        let split = Decoration::from_keys(goc, &keys);
        if split.class_count() == d.class_count() {
            return (rounds, nu);
        }
        let more = neighbor_refine_rounds(goc, &split);
        rounds.extend(more);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantClass {
    pub ornament: Ornament,
    /// Number of quotient nodes in the class.
    pub size: usize,
    pub signature: Signature,
    pub density: DensityVector,
    /// Least raw `2m + n` vector among the class members (VA classes only).
    pub raw_density: Option<Vec<u64>>,
    /// Sorted distinct star certificates of the members (rigid classes only).
    pub star_certificates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureInvariant {
    pub classes: Vec<InvariantClass>,
    pub matrix: Vec<Vec<Multiplicity>>,
    pub density_refined: bool,
}

impl StructureInvariant {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn has_rigid(&self) -> bool {
        self.classes
            .iter()
            .any(|c| c.ornament.vertex_type == VertexType::Rig)
    }

    /// Signature entry of class `j` toward class `k` for one edge kind.
    pub fn entry(&self, j: usize, k: usize, kind: EdgeKind) -> Multiplicity {
        self.classes[j]
            .signature
            .iter()
            .find(|&&(c, e, _)| c == k && e == kind)
            .map_or(Multiplicity::ZERO, |&(_, _, m)| m)
    }
}

/// Builds the invariant from a stable decoration. `densities` must be the
/// density vectors of that decoration when it came from density refinement.
pub fn structure_invariant(
    goc: &GraphOfCylinders,
    d: &Decoration,
    densities: Option<&[DensityVector]>,
) -> Result<StructureInvariant> {
    let k = d.class_count();
    let sigs: Vec<Signature> = (0..goc.node_count())
        .map(|v| signature(goc, &d.class_of, v))
        .collect();
    let mut classes = Vec::with_capacity(k);
    for c in 0..k {
        let members: Vec<usize> = d.members(c).collect();
        let rep = members[0];
        let uniform = members.iter().all(|&v| {
            sigs[v] == sigs[rep]
                && ornament(goc, v) == d.classes[c].ornament
                && densities.is_none_or(|nu| nu[v] == nu[rep])
        });
        if !uniform {
            return Err(Error::NotStable);
        }
        let raw_density = members
            .iter()
            .filter_map(|&v| raw_density(goc, d, v))
            .min();
        let mut star_certificates: Vec<String> = members
            .iter()
            .filter(|&&v| goc.nodes[v].kind == NodeKind::Rigid)
            .map(|&v| rigid_star_certificate(goc, v))
            .collect();
        star_certificates.sort();
        star_certificates.dedup();
        classes.push(InvariantClass {
            ornament: d.classes[c].ornament.clone(),
            size: members.len(),
            signature: sigs[rep].clone(),
            density: match densities {
                Some(nu) => nu[rep].clone(),
                None => density_vectors(goc, d)[rep].clone(),
            },
            raw_density,
            star_certificates,
        });
    }
    let mut matrix = vec![vec![Multiplicity::ZERO; k]; k];
    for (j, class) in classes.iter().enumerate() {
        for &(c, _, m) in &class.signature {
            matrix[j][c] = matrix[j][c] + m;
        }
    }
    Ok(StructureInvariant {
        classes,
        matrix,
        density_refined: densities.is_some(),
    })
}

/// Stable decoration and invariant, with or without density refinement.
pub fn compute(goc: &GraphOfCylinders, density: bool) -> (Decoration, StructureInvariant) {
    if density {
        let (d, nu) = density_refine(goc);
        let inv = structure_invariant(goc, &d, Some(&nu)).expect("density refinement is stable");
        (d, inv)
    } else {
        let d = neighbor_refine(goc, &initial_decoration(goc));
        let inv = structure_invariant(goc, &d, None).expect("neighbour refinement is stable");
        (d, inv)
    }
}
