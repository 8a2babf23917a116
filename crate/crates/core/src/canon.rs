//! Canonical certificates of induced subgraphs with marked vertex sets.
//!
//! Certificates come from an individualization-refinement search that keeps
//! the lexicographically least leaf, with orbit pruning from the
//! automorphisms found along the way.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::graph::DefiningGraph;
use crate::vertex_set::VertexSet;

/// A vertex-coloured graph on at most 128 vertices.
#[derive(Clone, Debug)]
struct Colored {
    adj: Vec<VertexSet>,
    color: Vec<u32>,
}

/// Certificate of the subgraph of `g` induced on `base`, where every entry
/// `(tag, set)` of `marked` adds a new vertex coloured `tag` and joined to
/// the members of `set ∩ base`. Equal certificates mean isomorphic
/// structures (respecting tags); `marked` is treated as a multiset.
pub fn certificate(g: &DefiningGraph, base: VertexSet, marked: &[(u32, VertexSet)]) -> String {
    let verts = base.to_vec();
    let n = verts.len() + marked.len();
    assert!(n <= crate::MAX_VERTICES, "certificate structure too large");
    let mut adj = vec![VertexSet::EMPTY; n];
    let local = |v: usize| verts.iter().position(|&w| w == v);
    for (i, &u) in verts.iter().enumerate() {
        for (j, &v) in verts.iter().enumerate() {
            if g.adjacent(u, v) {
                adj[i].insert(j);
            }
        }
    }
    let mut color = vec![0u32; verts.len()];
    for (k, &(tag, set)) in marked.iter().enumerate() {
        let x = verts.len() + k;
        color.push(tag + 1);
        for v in set & base {
            let i = local(v).unwrap();
            adj[x].insert(i);
            adj[i].insert(x);
        }
    }
    let c = Colored { adj, color };
    let best = canonical_order(&c);
    encode(&c, &best)
}

fn encode(c: &Colored, order: &[usize]) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}", order.len());
    for &v in order {
        let _ = write!(s, ".{}", c.color[v]);
    }
    s.push(':');
    let mut acc = 0u8;
    let mut bits = 0;
    for (i, &u) in order.iter().enumerate() {
        for &v in &order[i + 1..] {
            acc = acc << 1 | c.adj[u].contains(v) as u8;
            bits += 1;
            if bits == 4 {
                let _ = write!(s, "{acc:x}");
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        let _ = write!(s, "{:x}", acc << (4 - bits));
    }
    s
}

/// Key used to compare leaves: colours then upper-triangle adjacency.
fn leaf_key(c: &Colored, order: &[usize]) -> Vec<u32> {
    let mut k: Vec<u32> = order.iter().map(|&v| c.color[v]).collect();
    for (i, &u) in order.iter().enumerate() {
        for &v in &order[i + 1..] {
            k.push(c.adj[u].contains(v) as u32);
        }
    }
    k
}

type Partition = Vec<Vec<usize>>;

fn initial_partition(c: &Colored) -> Partition {
    let mut by_color: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (v, &col) in c.color.iter().enumerate() {
        by_color.entry(col).or_default().push(v);
    }
    by_color.into_values().collect()
}

/// Colour refinement to an equitable partition; cells split in the order of
/// their neighbourhood profiles, which keeps the result label-independent.
fn refine(c: &Colored, mut p: Partition) -> Partition {
    loop {
        let cell_sets: Vec<VertexSet> = p.iter().map(|cell| cell.iter().copied().collect()).collect();
        let mut next: Partition = Vec::with_capacity(p.len());
        for cell in &p {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            for &v in cell {
                let profile = cell_sets.iter().map(|s| (c.adj[v] & *s).len()).collect();
                groups.entry(profile).or_default().push(v);
            }
            next.extend(groups.into_values());
        }
        if next.len() == p.len() {
            return next;
        }
        p = next;
    }
}

struct Search<'a> {
    c: &'a Colored,
    best: Option<(Vec<u32>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

fn canonical_order(c: &Colored) -> Vec<usize> {
    let mut s = Search {
        c,
        best: None,
        automorphisms: Vec::new(),
    };
    let p = refine(c, initial_partition(c));
    s.descend(p, &mut Vec::new());
    s.best.map(|(_, o)| o).unwrap_or_default()
}

impl Search<'_> {
    fn descend(&mut self, p: Partition, prefix: &mut Vec<usize>) {
        let target = p
            .iter()
            .enumerate()
            .filter(|(_, cell)| cell.len() > 1)
            .min_by_key(|(i, cell)| (cell.len(), *i))
            .map(|(i, _)| i);
        let Some(ti) = target else {
            let order: Vec<usize> = p.iter().map(|cell| cell[0]).collect();
            self.leaf(order);
            return;
        };
        let cell = p[ti].clone();
        let mut done: Vec<usize> = Vec::new();
        for &v in &cell {
            if done.iter().any(|&w| self.same_orbit(prefix, w, v)) {
                continue;
            }
            let mut q = p.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
            q.splice(ti..=ti, [vec![v], rest]);
            let q = refine(self.c, q);
            prefix.push(v);
            self.descend(q, prefix);
            prefix.pop();
            done.push(v);
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let key = leaf_key(self.c, &order);
        match &self.best {
            None => self.best = Some((key, order)),
            Some((bk, bo)) => {
                if key == *bk {
                    let mut gamma = vec![0; order.len()];
                    for (i, &v) in order.iter().enumerate() {
                        gamma[v] = bo[i];
                    }
                    self.automorphisms.push(gamma);
                } else if key < *bk {
                    self.best = Some((key, order));
                }
            }
        }
    }

    /// Whether `u` and `v` are in one orbit of the group generated by the
    /// known automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], u: usize, v: usize) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|g| prefix.iter().all(|&x| g[x] == x))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut seen = VertexSet::singleton(u);
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = g[x];
                if y == v {
                    return true;
                }
                if !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn relabelling_invariance() {
        let g = DefiningGraph::from_edges([("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let h = DefiningGraph::from_edges([("c", "d"), ("a", "b"), ("b", "c")]).unwrap();
        let cg = certificate(&g, g.all(), &[(0, g.set_of(&["a", "b"]).unwrap())]);
        let ch = certificate(&h, h.all(), &[(0, h.set_of(&["c", "d"]).unwrap())]);
        assert_eq!(cg, ch);
        let other = certificate(&g, g.all(), &[(0, g.set_of(&["b", "c"]).unwrap())]);
        assert_ne!(cg, other);
    }

    #[test]
    fn symmetric_structures_terminate() {
        let g = named::complete_bipartite(6, 6);
        let a = certificate(&g, g.all(), &[]);
        let h = named::cycle(12);
        assert_ne!(a, certificate(&h, h.all(), &[]));
        let e = DefiningGraph::from_index_edges(20, &[]).unwrap();
        let _ = certificate(&e, e.all(), &[]);
    }

    #[test]
    fn tags_matter() {
        let g = named::cycle(4);
        let s = g.set_of(&["v0", "v1"]).unwrap();
        assert_ne!(certificate(&g, g.all(), &[(0, s)]), certificate(&g, g.all(), &[(1, s)]));
    }
}
