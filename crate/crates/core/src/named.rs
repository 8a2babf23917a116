//! Small named defining graphs used throughout the tests and the bundled
//! corpus.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{DefiningGraph, GraphBuilder};

fn build(vertices: &[&str], edges: &[(&str, &str)]) -> DefiningGraph {
    let mut b = GraphBuilder::default();
    for v in vertices {
        b.vertex(v).expect("vertex fits");
    }
    for (u, v) in edges {
        b.edge(u, v).expect("valid edge");
    }
    b.build().expect("valid graph")
}

/// Two poles `a`, `b` joined by branches with the given numbers of interior
/// vertices. Interior vertices are named `u1, u2, ..` along the branches.
pub fn generalized_theta(interiors: &[usize]) -> DefiningGraph {
    let mut b = GraphBuilder::default();
    b.vertex("a").unwrap();
    b.vertex("b").unwrap();
    let mut next = 1;
    for &k in interiors {
        let mut prev = String::from("a");
        for _ in 0..k {
            let name = format!("u{next}");
            next += 1;
            b.edge(&prev, &name).unwrap();
            prev = name;
        }
        b.edge(&prev, "b").unwrap();
    }
    b.build().unwrap()
}

/// Three branches of length three between `a` and `b`.
pub fn theta_222() -> DefiningGraph {
    generalized_theta(&[2, 2, 2])
}

/// The square `a c1 b c2` plus `k` paths `a - p1 - p2 - b`, `a - q1 - q2 - b`, ..
pub fn square_with_paths(k: usize) -> DefiningGraph {
    const NAMES: &[char] = &['p', 'q', 's', 't', 'w', 'z'];
    assert!(k <= NAMES.len());
    let mut b = GraphBuilder::default();
    for v in ["a", "b", "c1", "c2"] {
        b.vertex(v).unwrap();
    }
    b.edge("a", "c1").unwrap();
    b.edge("c1", "b").unwrap();
    b.edge("b", "c2").unwrap();
    b.edge("c2", "a").unwrap();
    for &c in &NAMES[..k] {
        let x = format!("{c}1");
        let y = format!("{c}2");
        b.edge("a", &x).unwrap();
        b.edge(&x, &y).unwrap();
        b.edge(&y, "b").unwrap();
    }
    b.build().unwrap()
}

/// Octagon `a x1 d x2 b x3 e x4` with a centre `c` joined to `a, b, d, e`.
pub fn star_octagon() -> DefiningGraph {
    build(
        &["a", "x1", "d", "x2", "b", "x3", "e", "x4", "c"],
        &[
            ("a", "x1"),
            ("x1", "d"),
            ("d", "x2"),
            ("x2", "b"),
            ("b", "x3"),
            ("x3", "e"),
            ("e", "x4"),
            ("x4", "a"),
            ("c", "a"),
            ("c", "b"),
            ("c", "d"),
            ("c", "e"),
        ],
    )
}

/// Square `x c y d` with paths `c - n1 - n2 - d` and `x - m1 - m2 - y`.
///
/// The common neighbours `c, d` of the uncrossed pair `{x, y}` are joined
/// away from `x` and `y`.
pub fn linked_square() -> DefiningGraph {
    build(
        &["x", "c", "y", "d", "n1", "n2", "m1", "m2"],
        &[
            ("x", "c"),
            ("c", "y"),
            ("y", "d"),
            ("d", "x"),
            ("c", "n1"),
            ("n1", "n2"),
            ("n2", "d"),
            ("x", "m1"),
            ("m1", "m2"),
            ("m2", "y"),
        ],
    )
}

/// `K_{m,n}` with sides `a, b, ..` and `c1 .. cn`.
pub fn complete_bipartite(m: usize, n: usize) -> DefiningGraph {
    assert!(m <= 26);
    let left: Vec<String> = (0..m)
        .map(|i| String::from(char::from(b'a' + i as u8)))
        .collect();
    let right: Vec<String> = (1..=n).map(|i| format!("c{i}")).collect();
    let mut b = GraphBuilder::default();
    for v in left.iter().chain(&right) {
        b.vertex(v).unwrap();
    }
    for l in &left {
        for r in &right {
            b.edge(l, r).unwrap();
        }
    }
    b.build().unwrap()
}

/// The cycle `v0 .. v{n-1}`.
pub fn cycle(n: usize) -> DefiningGraph {
    let mut b = GraphBuilder::default();
    for i in 0..n {
        b.vertex(&format!("v{i}")).unwrap();
    }
    for i in 0..n {
        b.edge(&format!("v{i}"), &format!("v{}", (i + 1) % n)).unwrap();
    }
    b.build().unwrap()
}

/// `K4` on corners `k1 .. k4` with every edge subdivided `s` times.
/// Subdivision vertices are named `s{i}{j}_{t}`.
pub fn subdivided_k4(s: usize) -> DefiningGraph {
    let mut b = GraphBuilder::default();
    for i in 1..=4 {
        b.vertex(&format!("k{i}")).unwrap();
    }
    for i in 1..=4 {
        for j in i + 1..=4 {
            let mut prev = format!("k{i}");
            for t in 1..=s {
                let name = format!("s{i}{j}_{t}");
                b.edge(&prev, &name).unwrap();
                prev = name;
            }
            b.edge(&prev, &format!("k{j}")).unwrap();
        }
    }
    b.build().unwrap()
}
