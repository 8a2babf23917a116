//! DOT rendering of a graph of cylinders: cylinders green, hanging red,
//! rigid blue.

use std::fmt::Write as _;

use racg_core::{GraphOfCylinders, NodeKind};

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn color(kind: NodeKind) -> &'static str {
    match kind {
        NodeKind::Cylinder(_) => "green",
        NodeKind::Hanging => "red",
        NodeKind::Rigid => "blue",
    }
}

pub fn export_dot(l: &GraphOfCylinders) -> String {
    let g = &l.graph;
    let mut s = String::from("graph cylinders {\n  node [style=filled, fontcolor=white];\n");
    for (i, n) in l.nodes.iter().enumerate() {
        let head = match n.kind {
            NodeKind::Cylinder(c) => format!("CYL {c}"),
            NodeKind::Hanging => "HANG".to_string(),
            NodeKind::Rigid => "RIG".to_string(),
        };
        let label = format!("{head}\\n{}", escape(&braces(&g.labels_of(n.gens))));
        let _ = writeln!(
            s,
            "  n{i} [label=\"{label}\", color={c}, fillcolor={c}];",
            c = color(n.kind)
        );
    }
    for e in &l.edges {
        let _ = writeln!(
            s,
            "  n{} -- n{} [label=\"{}\"];",
            e.cyl,
            e.other,
            escape(&braces(&g.labels_of(e.edge_gens)))
        );
    }
    s.push_str("}\n");
    s
}
