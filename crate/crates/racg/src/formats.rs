//! Defining-graph file formats: edge lists, a subset of DOT, and JSON.

use std::fmt::Write as _;
use std::path::Path;

use racg_core::{DefiningGraph, GraphBuilder};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    EdgeList,
    DotSubset,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: self-loop at {vertex}")]
    SelfLoop { line: usize, vertex: String },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "PARSE_ERROR",
            ParseError::SelfLoop { .. } => "SELF_LOOP",
        }
    }

    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::SelfLoop { line, .. } => *line,
        }
    }
}

fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        reason: reason.into(),
    }
}

/// Adds vertices and edges while tracking the line for error reports.
struct Sink {
    b: GraphBuilder,
}

impl Sink {
    fn new() -> Self {
        Sink {
            b: GraphBuilder::default(),
        }
    }

    fn vertex(&mut self, line: usize, v: &str) -> Result<(), ParseError> {
        self.b.vertex(v).map(|_| ()).map_err(|e| syntax(line, e.to_string()))
    }

    fn edge(&mut self, line: usize, u: &str, v: &str) -> Result<(), ParseError> {
        if u == v {
            return Err(ParseError::SelfLoop {
                line,
                vertex: u.to_string(),
            });
        }
        self.b.edge(u, v).map(|_| ()).map_err(|e| syntax(line, e.to_string()))
    }

    fn finish(self) -> Result<DefiningGraph, ParseError> {
        self.b.build().map_err(|e| syntax(0, e.to_string()))
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<DefiningGraph, ParseError> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::DotSubset => parse_dot(text),
        Format::Json => parse_json(text),
    }
}

/// Guesses the format from the path extension, then from the content.
pub fn sniff(path: Option<&Path>, text: &str) -> Format {
    match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("json") => return Format::Json,
        Some("dot" | "gv") => return Format::DotSubset,
        _ => {}
    }
    let t = text.trim_start();
    if t.starts_with('{') {
        return Format::Json;
    }
    let first: Vec<&str> = t.split_whitespace().take(2).collect();
    match first.as_slice() {
        ["graph" | "digraph", ..] | ["strict", "graph" | "digraph"] => Format::DotSubset,
        [w, ..] if w.starts_with("graph{") => Format::DotSubset,
        _ => Format::EdgeList,
    }
}

fn plain_label(s: &str) -> bool {
    !s.is_empty()
        && !s.contains("--")
        && !s
            .chars()
            .any(|c| c.is_whitespace() || "#;{}[]=,\"".contains(c))
}

/// One edge `A -- B` per line, chains `A -- B -- C` allowed, a bare label
/// declares a vertex. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<DefiningGraph, ParseError> {
    let mut sink = Sink::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let parts: Vec<&str> = body.split("--").map(str::trim).collect();
        for p in &parts {
            if !plain_label(p) {
                return Err(syntax(line, format!("bad vertex label {p:?}")));
            }
        }
        if parts.len() == 1 {
            sink.vertex(line, parts[0])?;
        }
        for w in parts.windows(2) {
            sink.edge(line, w[0], w[1])?;
        }
    }
    sink.finish()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    Sym(char),
    Edge,
    Arrow,
}

fn lex_dot(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut line = 1;
    let mut i = 0;
    let bare = |c: char| c.is_alphanumeric() || c == '_' || c == '.';
    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                let start = line;
                i += 2;
                loop {
                    match chars.get(i) {
                        None => return Err(syntax(start, "unterminated comment")),
                        Some('*') if chars.get(i + 1) == Some(&'/') => {
                            i += 2;
                            break;
                        }
                        Some('\n') => line += 1,
                        _ => {}
                    }
                    i += 1;
                }
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                out.push((line, Tok::Edge));
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((line, Tok::Arrow));
                i += 2;
            }
            '{' | '}' | ';' | '[' | ']' | '=' | ',' => {
                out.push((line, Tok::Sym(c)));
                i += 1;
            }
            '"' => {
                let start = line;
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(syntax(start, "unterminated string")),
                        Some('"') => break,
                        Some('\\') if chars.get(i + 1) == Some(&'"') => {
                            s.push('"');
                            i += 1;
                        }
                        Some(&ch) => {
                            if ch == '\n' {
                                line += 1;
                            }
                            s.push(ch);
                        }
                    }
                    i += 1;
                }
                i += 1;
                out.push((start, Tok::Id(s)));
            }
            c if bare(c) || c == '-' => {
                let mut s = String::from(c);
                i += 1;
                while i < chars.len() && bare(chars[i]) {
                    s.push(chars[i]);
                    i += 1;
                }
                out.push((line, Tok::Id(s)));
            }
            c => return Err(syntax(line, format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct DotParser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    last_line: usize,
}

impl DotParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(_, t)| t)
    }

    fn line(&self) -> usize {
        self.toks.get(self.pos).map_or(self.last_line, |(l, _)| *l)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        let line = self.line();
        match self.next() {
            Some(Tok::Sym(d)) if d == c => Ok(()),
            Some(t) => Err(syntax(line, format!("expected '{c}', found {t:?}"))),
            None => Err(syntax(line, format!("expected '{c}', found end of input"))),
        }
    }

    fn id(&mut self) -> Result<String, ParseError> {
        let line = self.line();
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            Some(Tok::Arrow) => Err(syntax(line, "directed edges are not supported")),
            Some(t) => Err(syntax(line, format!("expected identifier, found {t:?}"))),
            None => Err(syntax(line, "expected identifier, found end of input")),
        }
    }

    fn skip_attrs(&mut self) -> Result<(), ParseError> {
        while self.peek() == Some(&Tok::Sym('[')) {
            let line = self.line();
            self.next();
            loop {
                match self.next() {
                    Some(Tok::Sym(']')) => break,
                    Some(_) => {}
                    None => return Err(syntax(line, "unterminated attribute list")),
                }
            }
        }
        Ok(())
    }
}

/// `[strict] graph [NAME] { stmt; ... }` with node, edge and attribute
/// statements. Attributes are ignored.
pub fn parse_dot(text: &str) -> Result<DefiningGraph, ParseError> {
    let toks = lex_dot(text)?;
    let last_line = text.lines().count().max(1);
    let mut p = DotParser {
        toks,
        pos: 0,
        last_line,
    };
    let kw = |t: Option<&Tok>, w: &str| matches!(t, Some(Tok::Id(s)) if s.eq_ignore_ascii_case(w));
    if kw(p.peek(), "strict") {
        p.next();
    }
    let line = p.line();
    if kw(p.peek(), "digraph") {
        return Err(syntax(line, "directed graphs are not supported"));
    }
    if !kw(p.peek(), "graph") {
        return Err(syntax(line, "expected 'graph'"));
    }
    p.next();
    if let Some(Tok::Id(_)) = p.peek() {
        p.next();
    }
    p.expect_sym('{')?;
    let mut sink = Sink::new();
    loop {
        let line = p.line();
        match p.peek() {
            None => return Err(syntax(line, "missing '}'")),
            Some(Tok::Sym('}')) => {
                p.next();
                break;
            }
            Some(Tok::Sym(';' | ',')) => {
                p.next();
                continue;
            }
            Some(Tok::Sym('{')) => return Err(syntax(line, "subgraphs are not supported")),
            _ => {}
        }
        if kw(p.peek(), "subgraph") {
            return Err(syntax(line, "subgraphs are not supported"));
        }
        if (kw(p.peek(), "node") || kw(p.peek(), "edge") || kw(p.peek(), "graph"))
            && p.peek2() == Some(&Tok::Sym('['))
        {
            p.next();
            p.skip_attrs()?;
            continue;
        }
        let first = p.id()?;
        if p.peek() == Some(&Tok::Sym('=')) {
            p.next();
            p.id()?;
            continue;
        }
        let mut chain = vec![(line, first)];
        loop {
            match p.peek() {
                Some(Tok::Edge) => {
                    p.next();
                    let l = p.line();
                    chain.push((l, p.id()?));
                }
                Some(Tok::Arrow) => return Err(syntax(p.line(), "directed edges are not supported")),
                _ => break,
            }
        }
        p.skip_attrs()?;
        if chain.len() == 1 {
            sink.vertex(line, &chain[0].1)?;
        }
        for w in chain.windows(2) {
            sink.edge(w[1].0, &w[0].1, &w[1].1)?;
        }
    }
    if p.pos < p.toks.len() {
        return Err(syntax(p.line(), "unexpected content after '}'"));
    }
    sink.finish()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    #[serde(default)]
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

/// `{"vertices": [...], "edges": [["A", "B"], ...]}`. Edge endpoints must
/// be listed in `vertices` when that list is non-empty.
pub fn parse_json(text: &str) -> Result<DefiningGraph, ParseError> {
    let doc: JsonGraph =
        serde_json::from_str(text).map_err(|e| syntax(e.line(), e.to_string()))?;
    let line_of = |needle: &str| {
        text.lines()
            .position(|l| l.contains(&format!("\"{needle}\"")))
            .map_or(1, |i| i + 1)
    };
    let mut sink = Sink::new();
    for v in &doc.vertices {
        sink.vertex(line_of(v), v)?;
    }
    let declared = !doc.vertices.is_empty();
    for (u, v) in &doc.edges {
        for w in [u, v] {
            if declared && !doc.vertices.contains(w) {
                return Err(syntax(line_of(w), format!("edge uses undeclared vertex {w:?}")));
            }
        }
        sink.edge(line_of(u), u, v)?;
    }
    sink.finish()
}

fn dot_id(s: &str) -> String {
    let bare = !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !s.starts_with(|c: char| c.is_ascii_digit());
    if bare {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('"', "\\\""))
    }
}

/// Writes `g` so that [`parse_graph`] with the same format returns it
/// unchanged, vertex order included.
pub fn serialize_graph(g: &DefiningGraph, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::EdgeList => {
            for v in g.labels() {
                let _ = writeln!(s, "{v}");
            }
            for (u, v) in g.edges() {
                let _ = writeln!(s, "{} -- {}", g.label(u), g.label(v));
            }
        }
        Format::DotSubset => {
            s.push_str("graph G {\n");
            for v in g.labels() {
                let _ = writeln!(s, "  {};", dot_id(v));
            }
            for (u, v) in g.edges() {
                let _ = writeln!(s, "  {} -- {};", dot_id(g.label(u)), dot_id(g.label(v)));
            }
            s.push_str("}\n");
        }
        Format::Json => {
            let doc = JsonGraph {
                vertices: g.labels().to_vec(),
                edges: g
                    .edges()
                    .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
                    .collect(),
            };
            s = serde_json::to_string_pretty(&doc).unwrap();
            s.push('\n');
        }
    }
    s
}
