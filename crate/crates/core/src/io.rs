//! Line-oriented graph text format and DOT export.
//!
//! ```text
//! # comment
//! v a
//! v b
//! e a b
//! ```
//!
//! Edge lines implicitly require both endpoints to be declared somewhere in
//! the file. A repeated edge line is an error.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut vertices = BTreeSet::new();
    let mut edges: Vec<(usize, Edge)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| Error::Parse { line: line_no, msg };
        match fields.as_slice() {
            ["v", name] => {
                vertices.insert(name.to_string());
            }
            ["e", a, b] => {
                if a == b {
                    return Err(err(format!("loop on `{a}`")));
                }
                let e = edge(*a, *b);
                if !seen.insert(e.clone()) {
                    return Err(err(format!("duplicate edge {a} {b}")));
                }
                edges.push((line_no, e));
            }
            _ => return Err(err(format!("unrecognized record `{line}`"))),
        }
    }
    for (line, (a, b)) in &edges {
        for v in [a, b] {
            if !vertices.contains(v) {
                return Err(Error::Parse { line: *line, msg: format!("undeclared vertex `{v}`") });
            }
        }
    }
    Graph::new(vertices, edges.into_iter().map(|(_, e)| e))
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "v {v}").unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}

pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    for v in g.vertices() {
        writeln!(out, "  {};", quote(v)).unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "  {} -- {};", quote(&a), quote(&b)).unwrap();
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
