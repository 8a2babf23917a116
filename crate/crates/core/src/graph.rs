//! The defining graph of a right-angled Coxeter group.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Structural fingerprint of a [`DefiningGraph`].
///
/// Two graphs with the same labels (in order) and the same edges share an id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphId(pub u64);

/// A finite simplicial graph with named vertices.
///
/// Vertices are indexed in first-appearance order; that order is the
/// tie-breaker for every deterministic output in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningGraph {
    labels: Vec<String>,
    adj: Vec<VertexSet>,
    id: GraphId,
}

impl DefiningGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Builds a graph from an edge list, declaring vertices as they appear.
    pub fn from_edges<'a, I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut b = GraphBuilder::default();
        for (u, v) in edges {
            b.edge(u, v)?;
        }
        b.build()
    }

    /// Builds a graph on `n` vertices labelled `0..n` from index pairs.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = GraphBuilder::default();
        for v in 0..n {
            b.vertex(&v.to_string())?;
        }
        for &(u, v) in edges {
            b.edge(&u.to_string(), &v.to_string())?;
        }
        b.build()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Labels of a vertex set, in vertex order.
    pub fn labels_of(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.labels[v].clone()).collect()
    }

    /// Resolves labels to a vertex set.
    pub fn set_of(&self, labels: &[&str]) -> Result<VertexSet> {
        let mut s = VertexSet::EMPTY;
        for l in labels {
            let v = self
                .index_of(l)
                .ok_or_else(|| Error::UnknownVertex((*l).to_string()))?;
            s.insert(v);
        }
        Ok(s)
    }

    #[inline]
    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Vertices of degree at least three.
    pub fn essential_vertices(&self) -> VertexSet {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) >= 3)
            .collect()
    }

    /// Common neighbours of `a` and `b`.
    #[inline]
    pub fn common_neighbors(&self, a: usize, b: usize) -> VertexSet {
        self.adj[a] & self.adj[b]
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        if !within.contains(start) {
            return VertexSet::EMPTY;
        }
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next |= self.adj[v];
            }
            next &= within - seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of the graph induced on `V \ removed`, ordered
    /// by smallest vertex.
    pub fn components_after_removal(&self, removed: VertexSet) -> Vec<VertexSet> {
        let mut rest = self.all() - removed;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.reach(v, rest);
            rest = rest - comp;
            out.push(comp);
        }
        out
    }

    /// Whether removing `removed` leaves at least two components.
    pub fn separates(&self, removed: VertexSet) -> bool {
        let rest = self.all() - removed;
        match rest.first() {
            None => false,
            Some(v) => self.reach(v, rest) != rest,
        }
    }

    /// Whether `u` and `v` are joined by a path avoiding `removed`.
    pub fn connected_avoiding(&self, u: usize, v: usize, removed: VertexSet) -> bool {
        let rest = self.all() - removed;
        rest.contains(u) && self.reach(u, rest).contains(v)
    }

    pub fn is_connected(&self) -> bool {
        !self.separates(VertexSet::EMPTY)
    }

    /// Whether the subgraph induced on `set` is complete.
    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| (set.without(v)).is_subset(self.adj[v]))
    }

    /// Some triangle `(u, v, w)` with `u < v < w`, if any.
    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        for (u, v) in self.edges() {
            let common = self.common_neighbors(u, v);
            if let Some(w) = common.iter().find(|&w| w > v) {
                return Some((u, v, w));
            }
        }
        None
    }

    /// True iff the graph has no induced 4-cycle (square).
    pub fn is_hyperbolic(&self) -> bool {
        self.find_square().is_none()
    }

    /// Some induced square `[u, c1, v, c2]`, if any.
    pub fn find_square(&self) -> Option<[usize; 4]> {
        let n = self.vertex_count();
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacent(u, v) {
                    continue;
                }
                let common = self.common_neighbors(u, v);
                for c1 in common {
                    if let Some(c2) = (common - self.adj[c1]).iter().find(|&c| c > c1) {
                        return Some([u, c1, v, c2]);
                    }
                }
            }
        }
        None
    }

    /// True iff the graph is a single cycle (connected, all degrees two,
    /// at least three vertices).
    pub fn is_cycle(&self) -> bool {
        self.vertex_count() >= 3
            && (0..self.vertex_count()).all(|v| self.degree(v) == 2)
            && self.is_connected()
    }

    /// Subgraph induced on `set`, with vertices renumbered in order.
    pub fn induced(&self, set: VertexSet) -> DefiningGraph {
        let verts = set.to_vec();
        let mut b = GraphBuilder::default();
        for &v in &verts {
            b.vertex(&self.labels[v]).expect("labels are unique");
        }
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if self.adjacent(u, v) {
                    b.edge(&self.labels[u], &self.labels[v]).expect("no loops");
                }
            }
        }
        b.build().expect("subgraph of a valid graph")
    }
}

/// Incremental constructor for [`DefiningGraph`].
///
/// Duplicate edges collapse; self-loops are rejected.
#[derive(Default, Debug, Clone)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<VertexSet>,
}

impl GraphBuilder {
    /// Declares a vertex (no-op if it exists) and returns its index.
    pub fn vertex(&mut self, label: &str) -> Result<usize> {
        if let Some(&i) = self.index.get(label) {
            return Ok(i);
        }
        if self.labels.len() >= MAX_VERTICES {
            return Err(Error::TooManyVertices(self.labels.len() + 1));
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        self.adj.push(VertexSet::EMPTY);
        Ok(i)
    }

    /// Declares a new vertex, failing if the label is already taken.
    pub fn new_vertex(&mut self, label: &str) -> Result<usize> {
        if self.index.contains_key(label) {
            return Err(Error::DuplicateVertex(label.to_string()));
        }
        self.vertex(label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn edge(&mut self, u: &str, v: &str) -> Result<&mut Self> {
        if u == v {
            return Err(Error::SelfLoop(u.to_string()));
        }
        let a = self.vertex(u)?;
        let b = self.vertex(v)?;
        self.adj[a].insert(b);
        self.adj[b].insert(a);
        Ok(self)
    }

    /// Adds an edge between already-declared vertices.
    pub fn edge_declared(&mut self, u: &str, v: &str) -> Result<&mut Self> {
        for l in [u, v] {
            if !self.index.contains_key(l) {
                return Err(Error::UnknownVertex(l.to_string()));
            }
        }
        self.edge(u, v)
    }

    pub fn build(self) -> Result<DefiningGraph> {
        let id = fingerprint(&self.labels, &self.adj);
        Ok(DefiningGraph {
            labels: self.labels,
            adj: self.adj,
            id,
        })
    }
}

fn fingerprint(labels: &[String], adj: &[VertexSet]) -> GraphId {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    for l in labels {
        eat(l.as_bytes());
        eat(&[0xff]);
    }
    for s in adj {
        eat(&s.bits().to_le_bytes());
    }
    GraphId(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use alloc::vec;

    fn labels(g: &DefiningGraph, sets: &[VertexSet]) -> Vec<Vec<String>> {
        sets.iter().map(|s| g.labels_of(*s)).collect()
    }

    #[test]
    fn first_appearance_order_and_dedup() {
        let g = DefiningGraph::from_edges([("a", "b"), ("b", "c"), ("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(g.labels(), &["a", "b", "c"]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(
            DefiningGraph::from_edges([("a", "a")]),
            Err(Error::SelfLoop("a".into()))
        );
    }

    #[test]
    fn essential_vertices_of_named_graphs() {
        let g = named::theta_222();
        assert_eq!(g.labels_of(g.essential_vertices()), vec!["a", "b"]);
        let g = named::star_octagon();
        let mut ev = g.labels_of(g.essential_vertices());
        ev.sort();
        assert_eq!(ev, vec!["a", "b", "c", "d", "e"]);
        let g = named::complete_bipartite(2, 3);
        assert_eq!(g.labels_of(g.essential_vertices()), vec!["a", "b"]);
    }

    #[test]
    fn components_after_removing_cut_pairs() {
        let g = named::theta_222();
        let s = g.set_of(&["a", "b"]).unwrap();
        assert_eq!(
            labels(&g, &g.components_after_removal(s)),
            vec![vec!["u1", "u2"], vec!["u3", "u4"], vec!["u5", "u6"]]
        );
        let g = named::square_with_paths(1);
        let s = g.set_of(&["a", "b"]).unwrap();
        assert_eq!(
            labels(&g, &g.components_after_removal(s)),
            vec![vec!["c1"], vec!["c2"], vec!["p1", "p2"]]
        );
        assert_eq!(g.components_after_removal(VertexSet::EMPTY), vec![g.all()]);
    }

    #[test]
    fn hyperbolicity() {
        assert!(named::theta_222().is_hyperbolic());
        let g = named::square_with_paths(1);
        let sq = g.find_square().unwrap();
        let mut l: Vec<_> = sq.iter().map(|&v| g.label(v)).collect();
        l.sort();
        assert_eq!(l, vec!["a", "b", "c1", "c2"]);
        assert!(DefiningGraph::from_edges([("x", "y")]).unwrap().is_hyperbolic());
    }

    #[test]
    fn ids_track_structure() {
        let a = named::theta_222();
        let b = named::theta_222();
        assert_eq!(a.id(), b.id());
        assert_ne!(a.id(), named::square_with_paths(1).id());
    }
}
