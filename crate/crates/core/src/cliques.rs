//! Maximal clique enumeration on bitset adjacency.

use alloc::vec::Vec;

use crate::vertex_set::VertexSet;

/// All maximal cliques of the graph `adj` restricted to `universe`, sorted.
pub fn maximal_cliques(adj: &[VertexSet], universe: VertexSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    pivot(adj, VertexSet::EMPTY, universe, VertexSet::EMPTY, &mut out);
    out.sort();
    out
}

fn pivot(
    adj: &[VertexSet],
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let u = (p | x)
        .iter()
        .max_by_key(|&u| (p & adj[u]).len())
        .expect("p is non-empty");
    for v in p - adj[u] {
        pivot(adj, r.with(v), p & adj[v], x & adj[v], out);
        p.remove(v);
        x.insert(v);
    }
}

/// Maximal sets that are cliques in `adj` and also avoid a forbidden
/// completion: `blocked(r, v)` returns the vertices that may no longer join
/// once `v` joins `r`. The constraint must be hereditary.
pub fn maximal_constrained_cliques<B>(
    adj: &[VertexSet],
    universe: VertexSet,
    blocked: B,
) -> Vec<VertexSet>
where
    B: Fn(VertexSet, usize) -> VertexSet,
{
    let mut out = Vec::new();
    plain(adj, &blocked, VertexSet::EMPTY, universe, VertexSet::EMPTY, &mut out);
    out.sort();
    out
}

fn plain<B>(
    adj: &[VertexSet],
    blocked: &B,
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<VertexSet>,
) where
    B: Fn(VertexSet, usize) -> VertexSet,
{
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    for v in p {
        let keep = adj[v] - blocked(r, v);
        plain(adj, blocked, r.with(v), p & keep, x & keep, out);
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn adj(n: usize, edges: &[(usize, usize)]) -> Vec<VertexSet> {
        let mut a = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            a[u].insert(v);
            a[v].insert(u);
        }
        a
    }

    #[test]
    fn triangle_plus_pendant() {
        let a = adj(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let c = maximal_cliques(&a, VertexSet::full(4));
        assert_eq!(c, vec![VertexSet::from_iter([0, 1, 2]), VertexSet::from_iter([2, 3])]);
        let d = maximal_constrained_cliques(&a, VertexSet::full(4), |_, _| VertexSet::EMPTY);
        assert_eq!(c, d);
    }

    #[test]
    fn constraint_splits_triangle() {
        let a = adj(3, &[(0, 1), (1, 2), (0, 2)]);
        // forbid {0,1,2} as a whole
        let blocked = |r: VertexSet, v: usize| {
            let s = r.with(v);
            if s.len() == 2 {
                VertexSet::full(3) - s
            } else {
                VertexSet::EMPTY
            }
        };
        let c = maximal_constrained_cliques(&a, VertexSet::full(3), blocked);
        assert_eq!(
            c,
            vec![
                VertexSet::from_iter([0, 1]),
                VertexSet::from_iter([0, 2]),
                VertexSet::from_iter([1, 2])
            ]
        );
    }
}
