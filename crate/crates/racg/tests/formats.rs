use proptest::prelude::*;
use racg::{parse_graph, serialize_graph, sniff, Format, ParseError};
use racg_core::DefiningGraph;

fn edges(g: &DefiningGraph) -> Vec<(String, String)> {
    g.edges()
        .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
        .collect()
}

#[test]
fn edge_list_examples() {
    let g = parse_graph("a -- b\nb -- c", Format::EdgeList).unwrap();
    assert_eq!(g.labels(), ["a", "b", "c"]);
    assert_eq!(edges(&g), [("a".into(), "b".into()), ("b".into(), "c".into())]);
    let g = parse_graph("  # header\n x -- y   # trailing\n\nz\ny -- x\n", Format::EdgeList).unwrap();
    assert_eq!(g.labels(), ["x", "y", "z"]);
    assert_eq!(g.edge_count(), 1);
    assert_eq!(
        parse_graph("a -- a", Format::EdgeList),
        Err(ParseError::SelfLoop { line: 1, vertex: "a".into() })
    );
    let e = parse_graph("a -- b\na -- \n", Format::EdgeList).unwrap_err();
    assert_eq!((e.code(), e.line()), ("PARSE_ERROR", 2));
    let e = parse_graph("a b -- c", Format::EdgeList).unwrap_err();
    assert_eq!(e.code(), "PARSE_ERROR");
}

#[test]
fn dot_examples() {
    let g = parse_graph("graph G { a -- b; a -- b; }", Format::DotSubset).unwrap();
    assert_eq!(g.edge_count(), 1);
    let text = "strict graph \"named\" {\n  node [shape=box];\n  rankdir=LR\n  a -- b -- c [color=red]\n  // comment\n  d\n  \"e f\" -- a;\n}\n";
    let g = parse_graph(text, Format::DotSubset).unwrap();
    assert_eq!(g.labels(), ["a", "b", "c", "d", "e f"]);
    assert_eq!(g.edge_count(), 3);
    for (bad, line) in [
        ("digraph G { a -> b }", 1),
        ("graph G {\n a -> b\n}", 2),
        ("graph G {\n a -- b\n", 2),
        ("graph G { subgraph s { a } }", 1),
        ("graph G { a -- }", 1),
    ] {
        let e = parse_graph(bad, Format::DotSubset).unwrap_err();
        assert_eq!((e.code(), e.line()), ("PARSE_ERROR", line), "{bad}");
    }
    let e = parse_graph("graph {\n\n b -- b }", Format::DotSubset).unwrap_err();
    assert_eq!((e.code(), e.line()), ("SELF_LOOP", 3));
}

#[test]
fn json_examples() {
    let g = parse_graph(r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["b","a"]]}"#, Format::Json).unwrap();
    assert_eq!(g.labels(), ["a", "b", "c"]);
    assert_eq!(g.edge_count(), 2);
    let g = parse_graph(r#"{"edges":[["p","q"]]}"#, Format::Json).unwrap();
    assert_eq!(g.labels(), ["p", "q"]);
    let e = parse_graph("{\n\"vertices\": [\"a\"],\n\"edges\": [[\"a\", \"z\"]]\n}", Format::Json).unwrap_err();
    assert_eq!((e.code(), e.line()), ("PARSE_ERROR", 3));
    let e = parse_graph("{\n\"edges\": [[\"a\", \"a\"]]\n}", Format::Json).unwrap_err();
    assert_eq!(e.code(), "SELF_LOOP");
    let e = parse_graph("{\n\"edges\": [[\"a\"]\n}", Format::Json).unwrap_err();
    assert_eq!(e.code(), "PARSE_ERROR");
    assert!(parse_graph(r#"{"nodes":[]}"#, Format::Json).is_err());
}

#[test]
fn sniffing() {
    use std::path::Path;
    assert_eq!(sniff(None, "  {\"edges\":[]}"), Format::Json);
    assert_eq!(sniff(None, "graph G { a -- b }"), Format::DotSubset);
    assert_eq!(sniff(None, "strict graph { a -- b }"), Format::DotSubset);
    assert_eq!(sniff(None, "graph{ a -- b }"), Format::DotSubset);
    assert_eq!(sniff(None, "a -- b"), Format::EdgeList);
    assert_eq!(sniff(Some(Path::new("g.gv")), "a -- b"), Format::DotSubset);
    assert_eq!(sniff(Some(Path::new("g.json")), "a -- b"), Format::Json);
}

fn labelled_graph() -> impl Strategy<Value = DefiningGraph> {
    (1usize..12, proptest::collection::vec((0usize..12, 0usize..12), 0..30), any::<bool>()).prop_map(
        |(n, raw, odd)| {
            let mut b = racg_core::GraphBuilder::default();
            let name = |i: usize| if odd { format!("v_{i}.x") } else { format!("n{i}") };
            for i in (0..n).rev() {
                b.vertex(&name(i)).unwrap();
            }
            for (u, v) in raw {
                let (u, v) = (u % n, v % n);
                if u != v {
                    b.edge(&name(u), &name(v)).unwrap();
                }
            }
            b.build().unwrap()
        },
    )
}

proptest! {
    #[test]
    fn round_trip(g in labelled_graph()) {
        for f in [Format::EdgeList, Format::DotSubset, Format::Json] {
            let text = serialize_graph(&g, f);
            prop_assert_eq!(sniff(None, &text), f);
            let h = parse_graph(&text, f).unwrap();
            prop_assert_eq!(h.labels(), g.labels());
            prop_assert_eq!(edges(&h), edges(&g));
            prop_assert_eq!(serialize_graph(&h, f), text);
        }
    }
}
