#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use racg_core::{
    CylinderClass, DefiningGraph, GraphBuilder, GraphOfCylinders, NodeKind, VertexSet,
};

/// Plain adjacency matrix, rebuilt from the edge list.
pub struct Brute {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Brute {
    pub fn new(g: &DefiningGraph) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Brute { n, adj }
    }

    /// Number of components of the graph with `removed` deleted.
    pub fn components(&self, removed: &[usize]) -> usize {
        let mut seen = vec![false; self.n];
        for &r in removed {
            seen[r] = true;
        }
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                for y in 0..self.n {
                    if self.adj[x][y] && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    pub fn disconnects(&self, removed: &[usize]) -> bool {
        self.components(removed) > 1
    }

    /// Whether `u` reaches `v` without touching `removed`.
    pub fn linked(&self, u: usize, v: usize, removed: &[usize]) -> bool {
        if removed.contains(&u) || removed.contains(&v) {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &r in removed {
            seen[r] = true;
        }
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if x == v {
                return true;
            }
            for y in 0..self.n {
                if self.adj[x][y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    pub fn has_triangle(&self) -> bool {
        (0..self.n).any(|a| {
            (a + 1..self.n).any(|b| {
                self.adj[a][b] && (b + 1..self.n).any(|c| self.adj[a][c] && self.adj[b][c])
            })
        })
    }

    /// Triangle-free, connected, no separating vertex, no separating edge.
    pub fn first_assumption(&self) -> bool {
        if self.has_triangle() || self.components(&[]) != 1 {
            return false;
        }
        for v in 0..self.n {
            if self.disconnects(&[v]) {
                return false;
            }
            for w in v + 1..self.n {
                if self.adj[v][w] && self.disconnects(&[v, w]) {
                    return false;
                }
            }
        }
        true
    }

    /// `(a, b)` with `a < b` whose removal disconnects.
    pub fn cut_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.disconnects(&[a, b]) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// `(a, b, c)`: `a < b` non-adjacent and not separating, `c` a common
    /// neighbour, and `{a, b, c}` separating.
    pub fn cut_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adj[a][b] || self.disconnects(&[a, b]) {
                    continue;
                }
                for c in 0..self.n {
                    if self.adj[a][c] && self.adj[b][c] && self.disconnects(&[a, b, c]) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// `(x, y)` pairs of collections, written as `(a, b, mid)`, with `x`
    /// crossed by `y`.
    pub fn crossings(&self) -> BTreeSet<(Coll, Coll)> {
        let mut all: Vec<Coll> = self.cut_pairs().into_iter().map(|(a, b)| (a, b, None)).collect();
        all.extend(self.cut_triples().into_iter().map(|(a, b, c)| (a, b, Some(c))));
        let mut out = BTreeSet::new();
        for &x in &all {
            for &y in &all {
                let removed: Vec<usize> = match y.2 {
                    Some(m) => vec![y.0, y.1, m],
                    None => vec![y.0, y.1],
                };
                let crossed = match (x.2, y.2) {
                    (None, None) => {
                        !removed.contains(&x.0)
                            && !removed.contains(&x.1)
                            && !self.linked(x.0, x.1, &removed)
                    }
                    (Some(m1), Some(m2)) => {
                        m1 == m2
                            && x != y
                            && !removed.contains(&x.0)
                            && !removed.contains(&x.1)
                            && !self.linked(x.0, x.1, &removed)
                    }
                    _ => false,
                };
                if crossed {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    /// Every simple path from `s` to `t` whose interior avoids `forbidden`.
    fn paths(&self, s: usize, t: usize, forbidden: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![s];
        let mut on = vec![false; self.n];
        on[s] = true;
        self.extend(t, forbidden, &mut path, &mut on, &mut out);
        out
    }

    fn extend(
        &self,
        t: usize,
        forbidden: &[usize],
        path: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let x = *path.last().unwrap();
        for y in 0..self.n {
            if !self.adj[x][y] || on[y] {
                continue;
            }
            if y == t {
                let mut p = path.clone();
                p.push(t);
                out.push(p);
                continue;
            }
            if forbidden.contains(&y) {
                continue;
            }
            on[y] = true;
            path.push(y);
            self.extend(t, forbidden, path, on, out);
            path.pop();
            on[y] = false;
        }
    }

    /// Every subdivided K4 subgraph as (sorted corners, sorted branch vertex
    /// sets including endpoints).
    pub fn subdivided_k4s(&self) -> BTreeSet<(Vec<usize>, Vec<Vec<usize>>)> {
        let mut out = BTreeSet::new();
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let corners = [a, b, c, d];
                        let pairs: Vec<(usize, usize)> = (0..4)
                            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .map(|(i, j)| (corners[i], corners[j]))
                            .collect();
                        let options: Vec<Vec<Vec<usize>>> = pairs
                            .iter()
                            .map(|&(s, t)| self.paths(s, t, &corners))
                            .collect();
                        let mut used = vec![false; n];
                        let mut chosen: Vec<Vec<usize>> = Vec::new();
                        pick(&options, 0, &mut used, &mut chosen, &mut |branches| {
                            let mut bs: Vec<Vec<usize>> = branches
                                .iter()
                                .map(|p| {
                                    let mut q = p.clone();
                                    q.sort();
                                    q
                                })
                                .collect();
                            bs.sort();
                            out.insert((corners.to_vec(), bs));
                        });
                    }
                }
            }
        }
        out
    }

    /// Maximal non-empty vertex sets in which every pair is adjacent or
    /// separating and every subdivided K4 meets the set in at most two
    /// vertices or inside a single branch.
    pub fn maximal_a1_a2(&self) -> BTreeSet<Vec<usize>> {
        let k4s = self.subdivided_k4s();
        let sep = |u: usize, v: usize| self.adj[u][v] || self.disconnects(&[u, v]);
        let ok = |set: &[usize]| {
            for (i, &u) in set.iter().enumerate() {
                for &v in &set[i + 1..] {
                    if !sep(u, v) {
                        return false;
                    }
                }
            }
            k4s.iter().all(|(corners, branches)| {
                let inside: Vec<usize> = set
                    .iter()
                    .copied()
                    .filter(|v| corners.contains(v) || branches.iter().any(|b| b.contains(v)))
                    .collect();
                inside.len() <= 2
                    || branches
                        .iter()
                        .any(|b| inside.iter().all(|v| b.contains(v)))
            })
        };
        let members = |mask: u32| -> Vec<usize> { (0..self.n).filter(|&i| mask >> i & 1 == 1).collect() };
        let valid: Vec<bool> = (0..1u32 << self.n).map(|m| ok(&members(m))).collect();
        let mut out = BTreeSet::new();
        for m in 1..1u32 << self.n {
            if !valid[m as usize] {
                continue;
            }
            let maximal = (0..self.n).all(|i| m >> i & 1 == 1 || !valid[(m | 1 << i) as usize]);
            if maximal {
                out.insert(members(m));
            }
        }
        out
    }
}

pub type Coll = (usize, usize, Option<usize>);

fn pick(
    options: &[Vec<Vec<usize>>],
    i: usize,
    used: &mut [bool],
    chosen: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if i == options.len() {
        emit(chosen);
        return;
    }
    for p in &options[i] {
        let interior = &p[1..p.len() - 1];
        if interior.iter().any(|&v| used[v]) {
            continue;
        }
        for &v in interior {
            used[v] = true;
        }
        chosen.push(p.clone());
        pick(options, i + 1, used, chosen, emit);
        chosen.pop();
        for &v in interior {
            used[v] = false;
        }
    }
}

pub fn to_vec(s: VertexSet) -> Vec<usize> {
    s.iter().collect()
}

/// A random connected graph on `n` vertices: a random tree plus extra
/// edges. With `triangle_free`, extra edges that close a triangle are
/// skipped.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, triangle_free: bool) -> DefiningGraph {
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        adj[u][v] = true;
        adj[v][u] = true;
        edges.push((u, v));
    }
    let p: f64 = rng.gen_range(0.05..0.45);
    for u in 0..n {
        for v in u + 1..n {
            if adj[u][v] || !rng.gen_bool(p) {
                continue;
            }
            if triangle_free && (0..n).any(|w| adj[u][w] && adj[v][w]) {
                continue;
            }
            adj[u][v] = true;
            adj[v][u] = true;
            edges.push((u, v));
        }
    }
    DefiningGraph::from_index_edges(n, &edges).unwrap()
}

/// `count` random connected graphs with 4 to 9 vertices, half of them
/// triangle-free.
pub fn random_corpus(seed: u64, count: usize) -> Vec<DefiningGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=9);
            random_connected(&mut rng, n, i % 2 == 0)
        })
        .collect()
}

/// The same graph with shuffled vertex order, fresh labels and shuffled
/// edge order.
pub fn relabel(g: &DefiningGraph, seed: u64) -> DefiningGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let name = |v: usize| format!("w{}", perm[v]);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut b = GraphBuilder::default();
    for &v in &order {
        b.vertex(&name(v)).unwrap();
    }
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.shuffle(&mut rng);
    for (u, v) in edges {
        if rng.gen_bool(0.5) {
            b.edge(&name(u), &name(v)).unwrap();
        } else {
            b.edge(&name(v), &name(u)).unwrap();
        }
    }
    b.build().unwrap()
}

pub fn graph(edges: &[(&str, &str)]) -> DefiningGraph {
    DefiningGraph::from_edges(edges.iter().copied()).unwrap()
}

/// `K_{2,k}` on poles `a, b` and commons `c1..ck`, plus `paths` extra
/// branches `a - pi1 - pi2 - b`.
pub fn bipartite_with_paths(k: usize, paths: usize) -> DefiningGraph {
    let mut b = GraphBuilder::default();
    for i in 1..=k {
        let c = format!("c{i}");
        b.edge("a", &c).unwrap();
        b.edge(&c, "b").unwrap();
    }
    for i in 1..=paths {
        let (x, y) = (format!("p{i}1"), format!("p{i}2"));
        b.edge("a", &x).unwrap();
        b.edge(&x, &y).unwrap();
        b.edge(&y, "b").unwrap();
    }
    b.build().unwrap()
}

/// Level-3 valid graphs used throughout the suites.
pub fn corpus() -> Vec<(&'static str, DefiningGraph)> {
    use racg_core::named;
    vec![
        ("theta_222", named::theta_222()),
        ("square_path", named::square_with_paths(1)),
        ("square_two_paths", named::square_with_paths(2)),
        ("star_octagon", named::star_octagon()),
        ("k23", named::complete_bipartite(2, 3)),
        ("theta_233", named::generalized_theta(&[2, 3, 3])),
        ("theta_2222", named::generalized_theta(&[2, 2, 2, 2])),
        ("k23_path", bipartite_with_paths(3, 1)),
        ("k23_two_paths", bipartite_with_paths(3, 2)),
        ("k4_sub2", named::subdivided_k4(2)),
    ]
}

/// Builds a graph of cylinders over the generator list `gens` (no
/// generator edges unless given), with nodes named by generator labels.
pub fn hand_goc(
    gens: &[&str],
    gen_edges: &[(&str, &str)],
    nodes: &[(NodeKind, &[&str])],
    links: &[(usize, usize)],
) -> GraphOfCylinders {
    let mut b = GraphBuilder::default();
    for g in gens {
        b.vertex(g).unwrap();
    }
    for (u, v) in gen_edges {
        b.edge_declared(u, v).unwrap();
    }
    let g = b.build().unwrap();
    let parts = nodes
        .iter()
        .map(|(k, labels)| (*k, g.set_of(labels).unwrap()))
        .collect();
    GraphOfCylinders::from_parts(g, parts, links).unwrap()
}

const VA: NodeKind = NodeKind::Cylinder(CylinderClass::Va);
const TWO_ENDED: NodeKind = NodeKind::Cylinder(CylinderClass::TwoEnded);
const VFD: NodeKind = NodeKind::Cylinder(CylinderClass::Vfd);

const RIGID_GENS: [&str; 7] = ["a", "b", "r1", "r2", "r3", "r4", "r5"];
const RIGID_EDGES: [(&str, &str); 7] = [
    ("a", "r1"),
    ("r1", "b"),
    ("b", "r2"),
    ("r2", "a"),
    ("r1", "r3"),
    ("r3", "r4"),
    ("r4", "r5"),
];

/// One VA cylinder joined to one hanging and one rigid vertex.
pub fn one_va_one_hanging() -> GraphOfCylinders {
    let mut gens: Vec<&str> = RIGID_GENS.to_vec();
    gens.extend(["s", "t", "h1", "h2"]);
    let mut edges: Vec<(&str, &str)> = RIGID_EDGES.to_vec();
    edges.extend([("a", "s"), ("s", "b"), ("b", "t"), ("t", "a"), ("a", "h1"), ("h1", "h2"), ("h2", "b")]);
    hand_goc(
        &gens,
        &edges,
        &[
            (VA, &["a", "b", "s", "t"]),
            (NodeKind::Hanging, &["a", "b", "h1", "h2"]),
            (NodeKind::Rigid, &RIGID_GENS),
        ],
        &[(0, 1), (0, 2)],
    )
}

/// One VA cylinder joined to two hanging vertices and one rigid vertex.
pub fn one_va_two_hanging() -> GraphOfCylinders {
    let mut gens: Vec<&str> = RIGID_GENS.to_vec();
    gens.extend(["s", "t", "h1", "h2", "k1", "k2"]);
    let mut edges: Vec<(&str, &str)> = RIGID_EDGES.to_vec();
    edges.extend([
        ("a", "s"),
        ("s", "b"),
        ("b", "t"),
        ("t", "a"),
        ("a", "h1"),
        ("h1", "h2"),
        ("h2", "b"),
        ("a", "k1"),
        ("k1", "k2"),
        ("k2", "b"),
    ]);
    hand_goc(
        &gens,
        &edges,
        &[
            (VA, &["a", "b", "s", "t"]),
            (NodeKind::Hanging, &["a", "b", "h1", "h2"]),
            (NodeKind::Hanging, &["a", "b", "k1", "k2"]),
            (NodeKind::Rigid, &RIGID_GENS),
        ],
        &[(0, 1), (0, 2), (0, 3)],
    )
}

/// Node indices of [`refinement_example`].
pub mod refinement {
    pub const C1: usize = 0;
    pub const C2: usize = 1;
    pub const C3: usize = 2;
    pub const C4: usize = 3;
    pub const C5: usize = 4;
    pub const C6: usize = 5;
    pub const H1: usize = 6;
    pub const H2: usize = 7;
    pub const H3: usize = 8;
    pub const H4: usize = 9;
    pub const R: usize = 10;
}

/// Six cylinders around one rigid vertex: `c1, c4, c6` two-ended with only
/// the rigid neighbour, `c3` two-ended with one hanging neighbour, `c2` VA
/// with one hanging neighbour and `c5` VA with two.
pub fn refinement_example() -> GraphOfCylinders {
    let gens = [
        "p1", "q1", "a2", "b2", "p3", "q3", "p4", "q4", "a5", "b5", "p6", "q6", "s2", "t2", "s5",
        "t5", "x1", "x2", "x3", "x4",
    ];
    let rigid: &[&str] = &[
        "p1", "q1", "a2", "b2", "p3", "q3", "p4", "q4", "a5", "b5", "p6", "q6",
    ];
    hand_goc(
        &gens,
        &[],
        &[
            (TWO_ENDED, &["p1", "q1"]),
            (VA, &["a2", "b2", "s2", "t2"]),
            (TWO_ENDED, &["p3", "q3"]),
            (TWO_ENDED, &["p4", "q4"]),
            (VA, &["a5", "b5", "s5", "t5"]),
            (TWO_ENDED, &["p6", "q6"]),
            (NodeKind::Hanging, &["a2", "b2", "x1"]),
            (NodeKind::Hanging, &["p3", "q3", "x2"]),
            (NodeKind::Hanging, &["a5", "b5", "x3"]),
            (NodeKind::Hanging, &["a5", "b5", "x4"]),
            (NodeKind::Rigid, rigid),
        ],
        &[
            (0, 10),
            (3, 10),
            (5, 10),
            (2, 7),
            (2, 10),
            (1, 6),
            (1, 10),
            (4, 8),
            (4, 9),
            (4, 10),
        ],
    )
}

/// A VFD cylinder with `commons` common adjacents and `hanging` hanging
/// neighbours.
pub fn vfd_star(commons: usize, hanging: usize) -> GraphOfCylinders {
    let mut gens: Vec<String> = vec!["a".into(), "b".into()];
    gens.extend((1..=commons).map(|i| format!("c{i}")));
    gens.extend((1..=hanging).map(|i| format!("h{i}")));
    let labels: Vec<&str> = gens.iter().map(String::as_str).collect();
    let cyl: Vec<&str> = labels[..2 + commons].to_vec();
    let hangs: Vec<[&str; 3]> = (0..hanging).map(|i| ["a", "b", labels[2 + commons + i]]).collect();
    let mut nodes: Vec<(NodeKind, &[&str])> = vec![(VFD, &cyl)];
    for h in &hangs {
        nodes.push((NodeKind::Hanging, h));
    }
    let links: Vec<(usize, usize)> = (1..=hanging).map(|i| (0, i)).collect();
    hand_goc(&labels, &[], &nodes, &links)
}
