//! The JSJ graph of cylinders read off the defining graph.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cliques::{maximal_cliques, maximal_constrained_cliques};
use crate::cuts::{CutAnalysis, CylinderClass, CylinderData};
use crate::error::{Error, Result};
use crate::graph::DefiningGraph;
use crate::k4::BadTriples;
use crate::validate::validate;
use crate::vertex_set::VertexSet;

/// Default bound on the number of essential vertices for rigid enumeration.
pub const DEFAULT_RIGID_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HangingSource {
    PairwiseSep,
    CrossingTriples,
}

impl HangingSource {
    pub fn code(self) -> &'static str {
        match self {
            HangingSource::PairwiseSep => "PAIRWISE_SEP",
            HangingSource::CrossingTriples => "CROSSING_TRIPLES",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HangingData {
    pub set: VertexSet,
    pub source: HangingSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RigidData {
    pub set: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Cylinder(CylinderClass),
    Hanging,
    Rigid,
}

impl NodeKind {
    /// Position in the canonical node order.
    pub fn rank(self) -> u8 {
        match self {
            NodeKind::Cylinder(_) => 0,
            NodeKind::Hanging => 1,
            NodeKind::Rigid => 2,
        }
    }

    pub fn is_cylinder(self) -> bool {
        matches!(self, NodeKind::Cylinder(_))
    }

    pub fn code(self) -> &'static str {
        match self {
            NodeKind::Cylinder(_) => "CYL",
            NodeKind::Hanging => "HANG",
            NodeKind::Rigid => "RIG",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Cylinder(CylinderData),
    Hanging(HangingSource),
    Rigid,
    /// Supplied directly rather than computed from the defining graph.
    Given,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub gens: VertexSet,
    pub origin: Origin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Dinf,
    DinfXZ2,
}

impl EdgeKind {
    pub fn from_size(n: usize) -> Option<Self> {
        match n {
            2 => Some(EdgeKind::Dinf),
            3 => Some(EdgeKind::DinfXZ2),
            _ => None,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            EdgeKind::Dinf => "DINF",
            EdgeKind::DinfXZ2 => "DINF_X_Z2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub cyl: usize,
    pub other: usize,
    pub edge_gens: VertexSet,
    pub kind: EdgeKind,
}

/// Finite bipartite graph of cylinders with generator sets on nodes and
/// edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfCylinders {
    pub graph: DefiningGraph,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

impl GraphOfCylinders {
    /// Assembles a graph of cylinders from explicit nodes and edges. Edge
    /// generators are the intersections of node generators.
    pub fn from_parts(
        graph: DefiningGraph,
        nodes: Vec<(NodeKind, VertexSet)>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let nodes: Vec<Node> = nodes
            .into_iter()
            .map(|(kind, gens)| Node {
                kind,
                gens,
                origin: Origin::Given,
            })
            .collect();
        let all = graph.all();
        for (i, n) in nodes.iter().enumerate() {
            if !n.gens.is_subset(all) || n.gens.is_empty() {
                return Err(Error::InvalidGraphOfCylinders(format!(
                    "node {i} has generators outside the generator list"
                )));
            }
        }
        let mut out = Vec::with_capacity(edges.len());
        for &(x, y) in edges {
            if x >= nodes.len() || y >= nodes.len() {
                return Err(Error::InvalidGraphOfCylinders(format!(
                    "edge ({x}, {y}) references a missing node"
                )));
            }
            let (cyl, other) = match (nodes[x].kind.is_cylinder(), nodes[y].kind.is_cylinder()) {
                (true, false) => (x, y),
                (false, true) => (y, x),
                _ => {
                    return Err(Error::InvalidGraphOfCylinders(format!(
                        "edge ({x}, {y}) does not join a cylinder to a non-cylinder"
                    )))
                }
            };
            out.push(make_edge(&graph, &nodes, cyl, other)?);
        }
        Ok(GraphOfCylinders {
            graph,
            nodes,
            edges: out,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Indices of edges incident to node `v`.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.cyl == v || e.other == v)
            .map(|(i, _)| i)
    }

    /// Quotient degree of node `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.incident(v).count()
    }

    /// The endpoint of edge `e` other than `v`.
    pub fn opposite(&self, e: usize, v: usize) -> usize {
        let e = &self.edges[e];
        if e.cyl == v {
            e.other
        } else {
            e.cyl
        }
    }

    pub fn has_rigid(&self) -> bool {
        self.nodes.iter().any(|n| n.kind == NodeKind::Rigid)
    }

    pub fn count(&self, kind: NodeKind) -> usize {
        self.nodes.iter().filter(|n| n.kind == kind).count()
    }
}

fn make_edge(g: &DefiningGraph, nodes: &[Node], cyl: usize, other: usize) -> Result<Edge> {
    let edge_gens = nodes[cyl].gens & nodes[other].gens;
    let kind = match EdgeKind::from_size(edge_gens.len()) {
        Some(k) => k,
        None if edge_gens.len() > 3 => {
            return Err(Error::NonTwoEndedEdge {
                cylinder: cyl,
                other,
                edge_gens: g.labels_of(edge_gens),
            })
        }
        None => {
            return Err(Error::InvalidGraphOfCylinders(format!(
                "edge ({cyl}, {other}) has {} shared generators",
                edge_gens.len()
            )))
        }
    };
    Ok(Edge {
        cyl,
        other,
        edge_gens,
        kind,
    })
}

/// Adjacent, or non-adjacent with a disconnecting removal.
pub fn pairwise_separates(g: &DefiningGraph, u: usize, v: usize) -> bool {
    u != v && (g.adjacent(u, v) || g.separates(VertexSet::singleton(u).with(v)))
}

/// Compatibility graph of [`pairwise_separates`].
pub fn pairwise_separation_graph(g: &DefiningGraph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut adj = vec![VertexSet::EMPTY; n];
    for u in 0..n {
        for v in u + 1..n {
            if pairwise_separates(g, u, v) {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    adj
}

/// Maximal vertex sets whose members pairwise separate and which contain
/// no bad triple, before any filtering. Sorted.
pub fn maximal_pairwise_separating_sets(g: &DefiningGraph) -> Vec<VertexSet> {
    let bad = BadTriples::new(g);
    maximal_pairwise_separating_sets_with(g, &bad)
}

fn maximal_pairwise_separating_sets_with(g: &DefiningGraph, bad: &BadTriples) -> Vec<VertexSet> {
    let adj = pairwise_separation_graph(g);
    maximal_constrained_cliques(&adj, g.all(), |r, v| bad.blocked_by(r, v))
}

/// `W_A` is two-ended: two non-adjacent vertices, possibly with one common
/// neighbour.
fn is_two_ended(g: &DefiningGraph, a: VertexSet) -> bool {
    match a.len() {
        2 => {
            let v = a.to_vec();
            !g.adjacent(v[0], v[1])
        }
        3 => a.iter().any(|c| {
            let rest = a.without(c);
            rest.is_subset(g.neighbors(c)) && {
                let v = rest.to_vec();
                !g.adjacent(v[0], v[1])
            }
        }),
        _ => false,
    }
}

/// Hanging vertex sets. See [`HangingData`].
pub fn find_hanging_sets(
    g: &DefiningGraph,
    analysis: &CutAnalysis,
    cylinders: &[CylinderData],
) -> Result<Vec<HangingData>> {
    let keep = |a: VertexSet| {
        !g.is_clique(a) && !cylinders.iter().any(|c| a.is_subset(c.vertex_set))
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();

    for a in maximal_pairwise_separating_sets(g) {
        if !keep(a) {
            continue;
        }
        if is_two_ended(g, a) {
            return Err(Error::TwoEndedAnomaly(g.labels_of(a)));
        }
        if seen.insert(a) {
            out.push(HangingData {
                set: a,
                source: HangingSource::PairwiseSep,
            });
        }
    }

    let triples: Vec<_> = analysis.triples().copied().collect();
    let t = triples.len();
    let index: Vec<usize> = analysis
        .collections
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_triple())
        .map(|(i, _)| i)
        .collect();
    let mut adj = vec![VertexSet::EMPTY; t];
    for i in 0..t {
        for j in 0..t {
            if i != j
                && (analysis.crossed_by[index[i]][index[j]]
                    || analysis.crossed_by[index[j]][index[i]])
            {
                adj[i].insert(j);
            }
        }
    }
    let mut crossing = Vec::new();
    if t > 0 {
        for clique in maximal_cliques(&adj, VertexSet::full(t)) {
            if clique.len() < 2 {
                continue;
            }
            let a: VertexSet = clique
                .iter()
                .fold(VertexSet::EMPTY, |s, i| s | triples[i].gens());
            if keep(a) && seen.insert(a) {
                crossing.push(HangingData {
                    set: a,
                    source: HangingSource::CrossingTriples,
                });
            }
        }
    }
    out.extend(crossing);
    out.sort_by_key(|x| x.set);
    Ok(out)
}

/// Separators relevant to rigid sets: essential separating pairs and
/// separating paths of length two through essential vertices.
pub fn rigid_separators(g: &DefiningGraph) -> Vec<VertexSet> {
    let ev = g.essential_vertices();
    let mut out = Vec::new();
    for c in ev {
        for d in ev {
            if c < d {
                let s = VertexSet::singleton(c).with(d);
                if g.separates(s) {
                    out.push(s);
                }
            }
        }
    }
    for d in ev {
        let ends = (g.neighbors(d) & ev).to_vec();
        for (i, &c) in ends.iter().enumerate() {
            for &e in &ends[i + 1..] {
                let s = VertexSet::singleton(c).with(d).with(e);
                if g.separates(s) {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Maximal sets `B` of at least four essential vertices that no rigid
/// separator splits.
pub fn find_rigid_sets(g: &DefiningGraph, cap: usize) -> Result<Vec<RigidData>> {
    let ev = g.essential_vertices();
    if ev.len() > cap {
        return Err(Error::CapExceeded {
            essential: ev.len(),
            cap,
        });
    }
    let seps = rigid_separators(g);
    let mut adj = vec![VertexSet::EMPTY; g.vertex_count()];
    for u in ev {
        for v in ev {
            if u < v {
                let ok = seps.iter().all(|&s| {
                    s.contains(u) || s.contains(v) || g.connected_avoiding(u, v, s)
                });
                if ok {
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
            }
        }
    }
    Ok(maximal_cliques(&adj, ev)
        .into_iter()
        .filter(|b| b.len() >= 4)
        .map(|set| RigidData { set })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub rigid_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            rigid_cap: DEFAULT_RIGID_CAP,
        }
    }
}

/// Validates `g` at level three and builds its graph of cylinders.
pub fn build_graph_of_cylinders(g: &DefiningGraph, opts: BuildOptions) -> Result<GraphOfCylinders> {
    let report = validate(g, 3);
    if !report.passed {
        return Err(Error::AssumptionsFailed(alloc::boxed::Box::new(report)));
    }
    let analysis = CutAnalysis::new(g);
    let cylinders = analysis.cylinders(g);
    let hanging = find_hanging_sets(g, &analysis, &cylinders)?;
    let rigid = find_rigid_sets(g, opts.rigid_cap)?;

    let mut nodes: Vec<Node> = Vec::new();
    for c in &cylinders {
        nodes.push(Node {
            kind: NodeKind::Cylinder(c.klass),
            gens: c.vertex_set,
            origin: Origin::Cylinder(c.clone()),
        });
    }
    for h in &hanging {
        nodes.push(Node {
            kind: NodeKind::Hanging,
            gens: h.set,
            origin: Origin::Hanging(h.source),
        });
    }
    for r in &rigid {
        nodes.push(Node {
            kind: NodeKind::Rigid,
            gens: r.set,
            origin: Origin::Rigid,
        });
    }
    nodes.sort_by_key(|x| (x.kind.rank(), x.gens));

    let mut edges = Vec::new();
    for (y, cyl) in nodes.iter().enumerate() {
        let attach = match &cyl.origin {
            Origin::Cylinder(c) => c.collection.gens(),
            _ => continue,
        };
        for (z, other) in nodes.iter().enumerate() {
            if !other.kind.is_cylinder() && attach.is_subset(other.gens) {
                edges.push(make_edge(g, &nodes, y, z)?);
            }
        }
    }
    Ok(GraphOfCylinders {
        graph: g.clone(),
        nodes,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use alloc::string::String;

    fn set(g: &DefiningGraph, l: &[&str]) -> VertexSet {
        g.set_of(l).unwrap()
    }

    fn hanging(g: &DefiningGraph) -> Vec<HangingData> {
        let a = CutAnalysis::new(g);
        let c = a.cylinders(g);
        find_hanging_sets(g, &a, &c).unwrap()
    }

    #[test]
    fn pairwise_separation_examples() {
        let g = named::square_with_paths(1);
        let i = |s| g.index_of(s).unwrap();
        assert!(pairwise_separates(&g, i("a"), i("p1")));
        assert!(pairwise_separates(&g, i("a"), i("p2")));
        assert!(!pairwise_separates(&g, i("c1"), i("p1")));
    }

    #[test]
    fn hanging_sets_of_square_with_path() {
        let g = named::square_with_paths(1);
        let h = hanging(&g);
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].set, set(&g, &["a", "p1", "p2", "b"]));
        assert_eq!(h[0].source, HangingSource::PairwiseSep);
        assert!(maximal_pairwise_separating_sets(&g).contains(&set(&g, &["a", "c1", "b"])));
    }

    #[test]
    fn hanging_star() {
        let g = named::star_octagon();
        let h = hanging(&g);
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].set, set(&g, &["a", "b", "c", "d", "e"]));
        assert_eq!(h[0].source, HangingSource::CrossingTriples);
    }

    #[test]
    fn hanging_branches_of_theta() {
        let g = named::theta_222();
        let got: Vec<_> = hanging(&g).iter().map(|h| h.set).collect();
        assert_eq!(
            got,
            vec![
                set(&g, &["a", "u1", "u2", "b"]),
                set(&g, &["a", "u3", "u4", "b"]),
                set(&g, &["a", "u5", "u6", "b"]),
            ]
        );
    }

    #[test]
    fn rigid_examples() {
        assert!(find_rigid_sets(&named::star_octagon(), 24).unwrap().is_empty());
        assert!(find_rigid_sets(&named::theta_222(), 24).unwrap().is_empty());
        let g = named::subdivided_k4(2);
        let r = find_rigid_sets(&g, 24).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].set, set(&g, &["k1", "k2", "k3", "k4"]));
        assert_eq!(
            find_rigid_sets(&g, 3),
            Err(Error::CapExceeded {
                essential: 4,
                cap: 3
            })
        );
    }

    fn summary(goc: &GraphOfCylinders) -> Vec<String> {
        goc.nodes
            .iter()
            .map(|n| {
                let kind = match n.kind {
                    NodeKind::Cylinder(c) => String::from(c.label()),
                    k => String::from(k.code()),
                };
                format!("{kind}{:?}", goc.graph.labels_of(n.gens))
            })
            .collect()
    }

    #[test]
    fn theta_pipeline() {
        let g = named::theta_222();
        let goc = build_graph_of_cylinders(&g, BuildOptions::default()).unwrap();
        assert_eq!(goc.count(NodeKind::Cylinder(CylinderClass::TwoEnded)), 1);
        assert_eq!(goc.count(NodeKind::Hanging), 3);
        assert_eq!(goc.edges.len(), 3);
        for e in &goc.edges {
            assert_eq!(e.edge_gens, set(&g, &["a", "b"]));
            assert_eq!(e.kind, EdgeKind::Dinf);
        }
    }

    #[test]
    fn square_pipeline() {
        let g = named::square_with_paths(1);
        let goc = build_graph_of_cylinders(&g, BuildOptions::default()).unwrap();
        assert_eq!(
            summary(&goc),
            vec![
                "VA[\"a\", \"b\", \"c1\", \"c2\"]",
                "HANG[\"a\", \"b\", \"p1\", \"p2\"]"
            ]
        );
        assert_eq!(goc.edges.len(), 1);
        assert_eq!(goc.edges[0].kind, EdgeKind::Dinf);
    }

    #[test]
    fn star_pipeline() {
        let g = named::star_octagon();
        let goc = build_graph_of_cylinders(&g, BuildOptions::default()).unwrap();
        assert_eq!(goc.count(NodeKind::Cylinder(CylinderClass::Va)), 4);
        assert_eq!(goc.count(NodeKind::Hanging), 1);
        assert_eq!(goc.count(NodeKind::Rigid), 0);
        assert_eq!(goc.edges.len(), 4);
        assert!(goc.edges.iter().all(|e| e.kind == EdgeKind::DinfXZ2));
        let ad = goc.edges.iter().find(|e| goc.nodes[e.cyl].gens.contains(0) && goc.nodes[e.cyl].gens.contains(2)).unwrap();
        assert_eq!(ad.edge_gens, set(&g, &["a", "d", "c"]));
    }

    #[test]
    fn invalid_graph_rejected() {
        let g = named::linked_square();
        match build_graph_of_cylinders(&g, BuildOptions::default()) {
            Err(Error::AssumptionsFailed(r)) => assert!(!r.passed),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn from_parts_checks_edges() {
        let g = named::square_with_paths(1);
        let cyl = set(&g, &["a", "b", "c1", "c2"]);
        let h = set(&g, &["a", "b", "p1", "p2"]);
        let goc = GraphOfCylinders::from_parts(
            g.clone(),
            vec![(NodeKind::Cylinder(CylinderClass::Va), cyl), (NodeKind::Hanging, h)],
            &[(1, 0)],
        )
        .unwrap();
        assert_eq!(goc.edges[0].cyl, 0);
        assert!(GraphOfCylinders::from_parts(
            g.clone(),
            vec![(NodeKind::Hanging, cyl), (NodeKind::Hanging, h)],
            &[(0, 1)],
        )
        .is_err());
        assert!(matches!(
            GraphOfCylinders::from_parts(
                g,
                vec![(NodeKind::Cylinder(CylinderClass::Va), cyl), (NodeKind::Rigid, cyl)],
                &[(0, 1)],
            ),
            Err(Error::NonTwoEndedEdge { .. })
        ));
    }
}
