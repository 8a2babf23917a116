//! Subdivided `K4` subgraphs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::DefiningGraph;
use crate::vertex_set::VertexSet;

/// Corner pairs in branch order.
pub const BRANCH_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A subgraph homeomorphic to `K4`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubdividedK4 {
    /// Corners in increasing order.
    pub corners: [usize; 4],
    /// One path per entry of [`BRANCH_PAIRS`], endpoints included.
    pub branches: [Vec<usize>; 6],
}

impl SubdividedK4 {
    pub fn vertex_set(&self) -> VertexSet {
        self.branches
            .iter()
            .flat_map(|b| b.iter().copied())
            .collect()
    }

    /// Vertex set of each branch, endpoints included.
    pub fn branch_sets(&self) -> [VertexSet; 6] {
        core::array::from_fn(|i| self.branches[i].iter().copied().collect())
    }

    fn key(&self) -> ([usize; 4], [VertexSet; 6]) {
        (self.corners, self.branch_sets())
    }
}

/// Every subdivided `K4` in `g`, deduplicated by corner set and branch
/// vertex sets. Ordered by corners, then branch vertex sets.
pub fn subdivided_k4_list(g: &DefiningGraph) -> Vec<SubdividedK4> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for_each_subdivided_k4(g, |k| {
        if seen.insert(k.key()) {
            out.push(k.clone());
        }
    });
    out.sort_by_key(|x| x.key());
    out
}

/// Calls `f` for every subdivided `K4`, possibly several times for branch
/// systems that share vertex sets.
pub fn for_each_subdivided_k4<F: FnMut(&SubdividedK4)>(g: &DefiningGraph, mut f: F) {
    let candidates: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) >= 3).collect();
    let m = candidates.len();
    let mut k4 = SubdividedK4 {
        corners: [0; 4],
        branches: Default::default(),
    };
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                for l in k + 1..m {
                    let corners = [candidates[i], candidates[j], candidates[k], candidates[l]];
                    k4.corners = corners;
                    let corner_set: VertexSet = corners.iter().copied().collect();
                    let mut search = Search {
                        g,
                        corners,
                        used: corner_set,
                        path: vec![],
                        k4: &mut k4,
                        f: &mut f,
                    };
                    search.branch(0);
                }
            }
        }
    }
}

struct Search<'a, F> {
    g: &'a DefiningGraph,
    corners: [usize; 4],
    used: VertexSet,
    path: Vec<usize>,
    k4: &'a mut SubdividedK4,
    f: &'a mut F,
}

impl<F: FnMut(&SubdividedK4)> Search<'_, F> {
    fn branch(&mut self, idx: usize) {
        if idx == 6 {
            (self.f)(self.k4);
            return;
        }
        let (s, t) = BRANCH_PAIRS[idx];
        let (s, t) = (self.corners[s], self.corners[t]);
        self.path.clear();
        self.path.push(s);
        self.extend(idx, s, t);
    }

    fn extend(&mut self, idx: usize, at: usize, target: usize) {
        let nbrs = self.g.neighbors(at);
        if nbrs.contains(target) {
            let saved_path = core::mem::take(&mut self.path);
            let mut branch = saved_path.clone();
            branch.push(target);
            let old = core::mem::replace(&mut self.k4.branches[idx], branch);
            self.branch(idx + 1);
            self.k4.branches[idx] = old;
            self.path = saved_path;
        }
        let free = nbrs - self.used;
        if free.is_empty() || !self.target_reachable(free, target) {
            return;
        }
        for v in free {
            self.used.insert(v);
            self.path.push(v);
            self.extend(idx, v, target);
            self.path.pop();
            self.used.remove(v);
        }
    }

    fn target_reachable(&self, free: VertexSet, target: usize) -> bool {
        let within = (self.g.all() - self.used).with(target);
        free.iter()
            .any(|v| self.g.reach(v, within).contains(target))
    }
}

/// For each unordered pair `(u, v)`, the vertices `w` such that `{u, v, w}`
/// lies in a common subdivided `K4` but not on one of its branches
/// (endpoints included).
#[derive(Clone, Debug)]
pub struct BadTriples {
    bad: Vec<VertexSet>,
    n: usize,
}

impl BadTriples {
    pub fn new(g: &DefiningGraph) -> Self {
        let n = g.vertex_count();
        let mut bad = vec![VertexSet::EMPTY; n * n];
        let mut seen = BTreeSet::new();
        for_each_subdivided_k4(g, |k| {
            let branches = k.branch_sets();
            let all = k.vertex_set();
            if !seen.insert((all, branches)) {
                return;
            }
            for u in all {
                for v in all {
                    if u >= v {
                        continue;
                    }
                    // w is good iff some branch contains u, v and w.
                    let mut good = VertexSet::EMPTY;
                    for b in &branches {
                        if b.contains(u) && b.contains(v) {
                            good |= *b;
                        }
                    }
                    let add = all - good;
                    bad[u * n + v] |= add;
                    bad[v * n + u] |= add;
                }
            }
        });
        BadTriples { bad, n }
    }

    /// The vertices forming a bad triple with `u` and `v`.
    #[inline]
    pub fn with_pair(&self, u: usize, v: usize) -> VertexSet {
        self.bad[u * self.n + v]
    }

    pub fn is_bad(&self, u: usize, v: usize, w: usize) -> bool {
        self.with_pair(u, v).contains(w)
    }

    /// Vertices that would complete a bad triple with two members of `set`.
    pub fn blocked_by(&self, set: VertexSet, v: usize) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for u in set {
            if u != v {
                out |= self.with_pair(u, v);
            }
        }
        out
    }

    /// True iff `set` contains no bad triple.
    pub fn admits(&self, set: VertexSet) -> bool {
        let vs = set.to_vec();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if self.with_pair(u, v).intersects(set) {
                    return false;
                }
            }
        }
        true
    }
}
