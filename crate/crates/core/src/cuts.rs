//! Cut pairs, cut triples, crossing and commensurators.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{DefiningGraph, GraphId};
use crate::vertex_set::VertexSet;

/// A cut pair `{a, b}` or a cut triple `{a, b, mid}`, with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutCollection {
    pub a: usize,
    pub b: usize,
    pub mid: Option<usize>,
    graph: GraphId,
}

impl CutCollection {
    pub fn pair(g: &DefiningGraph, a: usize, b: usize) -> Self {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        CutCollection {
            a,
            b,
            mid: None,
            graph: g.id(),
        }
    }

    pub fn triple(g: &DefiningGraph, a: usize, b: usize, mid: usize) -> Self {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        CutCollection {
            a,
            b,
            mid: Some(mid),
            graph: g.id(),
        }
    }

    #[inline]
    pub fn is_pair(&self) -> bool {
        self.mid.is_none()
    }

    #[inline]
    pub fn is_triple(&self) -> bool {
        self.mid.is_some()
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    /// `{a, b}` or `{a, b, mid}`.
    pub fn gens(&self) -> VertexSet {
        let s = VertexSet::singleton(self.a).with(self.b);
        match self.mid {
            Some(m) => s.with(m),
            None => s,
        }
    }

    /// The two non-adjacent vertices.
    pub fn poles(&self) -> VertexSet {
        VertexSet::singleton(self.a).with(self.b)
    }

    /// Human-readable form such as `{a,b}` or `{a,b|c}`.
    pub fn describe(&self, g: &DefiningGraph) -> String {
        let mut s = String::from("{");
        s.push_str(g.label(self.a));
        s.push(',');
        s.push_str(g.label(self.b));
        if let Some(m) = self.mid {
            s.push('|');
            s.push_str(g.label(m));
        }
        s.push('}');
        s
    }
}

/// Type of a cylinder vertex group, decided by the number of common
/// neighbours of the poles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CylinderClass {
    TwoEnded,
    Va,
    Vfd,
}

impl CylinderClass {
    pub fn from_common_count(c: usize) -> Self {
        match c {
            0 | 1 => CylinderClass::TwoEnded,
            2 => CylinderClass::Va,
            _ => CylinderClass::Vfd,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CylinderClass::TwoEnded => "2E",
            CylinderClass::Va => "VA",
            CylinderClass::Vfd => "VFD",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "2E" => Some(CylinderClass::TwoEnded),
            "VA" => Some(CylinderClass::Va),
            "VFD" => Some(CylinderClass::Vfd),
            _ => None,
        }
    }
}

impl fmt::Display for CylinderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The commensurator of a cut collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderData {
    pub collection: CutCollection,
    pub common_adjacents: VertexSet,
    pub klass: CylinderClass,
    pub vertex_set: VertexSet,
}

/// All separating pairs, sorted. On graphs satisfying the first standing
/// assumption these are exactly the cut pairs and none is adjacent.
pub fn find_cut_pairs(g: &DefiningGraph) -> Vec<CutCollection> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if g.separates(VertexSet::singleton(a).with(b)) {
                out.push(CutCollection::pair(g, a, b));
            }
        }
    }
    out
}

/// All cut triples `(a, b, mid)`, one per middle vertex, sorted.
pub fn find_cut_triples(g: &DefiningGraph) -> Vec<CutCollection> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if g.adjacent(a, b) {
                continue;
            }
            let poles = VertexSet::singleton(a).with(b);
            let common = g.common_neighbors(a, b);
            if common.is_empty() || g.separates(poles) {
                continue;
            }
            for mid in common {
                if g.separates(poles.with(mid)) {
                    out.push(CutCollection::triple(g, a, b, mid));
                }
            }
        }
    }
    out
}

/// Whether `x` is crossed by `y`: the removal of `y` separates the poles of
/// `x`. Pairs only cross pairs, and triples only cross triples with the same
/// middle vertex.
pub fn crosses(g: &DefiningGraph, x: &CutCollection, y: &CutCollection) -> Result<bool> {
    if x.graph != g.id() || y.graph != g.id() {
        return Err(Error::MixedGraph);
    }
    Ok(crosses_unchecked(g, x, y))
}

fn crosses_unchecked(g: &DefiningGraph, x: &CutCollection, y: &CutCollection) -> bool {
    match (x.mid, y.mid) {
        (None, None) => {
            !x.gens().intersects(y.gens()) && !g.connected_avoiding(x.a, x.b, y.gens())
        }
        (Some(m1), Some(m2)) => {
            m1 == m2 && x != y && {
                let removed = y.gens();
                !removed.contains(x.a)
                    && !removed.contains(x.b)
                    && !g.connected_avoiding(x.a, x.b, removed)
            }
        }
        _ => false,
    }
}

/// The common neighbours of the poles of `x`, and the resulting class.
pub fn commensurator(g: &DefiningGraph, x: &CutCollection) -> CylinderData {
    let common = g.common_neighbors(x.a, x.b);
    CylinderData {
        collection: *x,
        common_adjacents: common,
        klass: CylinderClass::from_common_count(common.len()),
        vertex_set: common | x.poles(),
    }
}

/// Every cut collection of a graph together with the crossing relation.
#[derive(Clone, Debug)]
pub struct CutAnalysis {
    /// Cut pairs first, then cut triples, each sorted.
    pub collections: Vec<CutCollection>,
    /// `crossed_by[i][j]` iff collection `i` is crossed by collection `j`.
    pub crossed_by: Vec<Vec<bool>>,
}

impl CutAnalysis {
    pub fn new(g: &DefiningGraph) -> Self {
        let mut collections = find_cut_pairs(g);
        collections.extend(find_cut_triples(g));
        let crossed_by = collections
            .iter()
            .map(|x| {
                collections
                    .iter()
                    .map(|y| crosses_unchecked(g, x, y))
                    .collect()
            })
            .collect();
        CutAnalysis {
            collections,
            crossed_by,
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = &CutCollection> {
        self.collections.iter().filter(|c| c.is_pair())
    }

    pub fn triples(&self) -> impl Iterator<Item = &CutCollection> {
        self.collections.iter().filter(|c| c.is_triple())
    }

    pub fn is_uncrossed(&self, i: usize) -> bool {
        !self.crossed_by[i].iter().any(|&c| c)
    }

    pub fn uncrossed(&self) -> Vec<CutCollection> {
        (0..self.collections.len())
            .filter(|&i| self.is_uncrossed(i))
            .map(|i| self.collections[i])
            .collect()
    }

    /// Commensurators of the uncrossed collections, one per pole pair.
    pub fn cylinders(&self, g: &DefiningGraph) -> Vec<CylinderData> {
        let mut out: Vec<CylinderData> = Vec::new();
        for x in self.uncrossed() {
            if out
                .iter()
                .any(|c| c.collection.a == x.a && c.collection.b == x.b)
            {
                continue;
            }
            out.push(commensurator(g, &x));
        }
        out.sort_by_key(|p| p.vertex_set);
        out
    }
}

/// Collections that no other collection crosses.
pub fn uncrossed_collections(g: &DefiningGraph) -> Vec<CutCollection> {
    CutAnalysis::new(g).uncrossed()
}
