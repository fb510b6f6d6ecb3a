//! Clique-width expressions: vertex creation, disjoint union, label-pair
//! edge addition and relabeling, with an s-expression text form:
//!
//! ```text
//! (v <label> <name>)   (u <t> <t>)   (add <i> <j> <t>)   (ren <i> <j> <t>)
//! ```

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Label = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CwTerm {
    Create { label: Label, name: String },
    Union(Box<CwTerm>, Box<CwTerm>),
    AddEdges { i: Label, j: Label, child: Box<CwTerm> },
    Relabel { from: Label, to: Label, child: Box<CwTerm> },
}

impl CwTerm {
    pub fn create(label: Label, name: impl Into<String>) -> CwTerm {
        CwTerm::Create { label, name: name.into() }
    }

    pub fn union(left: CwTerm, right: CwTerm) -> CwTerm {
        CwTerm::Union(Box::new(left), Box::new(right))
    }

    pub fn add_edges(i: Label, j: Label, child: CwTerm) -> CwTerm {
        CwTerm::AddEdges { i, j, child: Box::new(child) }
    }

    pub fn relabel(from: Label, to: Label, child: CwTerm) -> CwTerm {
        CwTerm::Relabel { from, to, child: Box::new(child) }
    }

    /// Number of `Create` leaves.
    pub fn create_count(&self) -> usize {
        match self {
            CwTerm::Create { .. } => 1,
            CwTerm::Union(a, b) => a.create_count() + b.create_count(),
            CwTerm::AddEdges { child, .. } | CwTerm::Relabel { child, .. } => child.create_count(),
        }
    }

    fn collect_labels(&self, out: &mut BTreeSet<Label>) {
        match self {
            CwTerm::Create { label, .. } => {
                out.insert(*label);
            }
            CwTerm::Union(a, b) => {
                a.collect_labels(out);
                b.collect_labels(out);
            }
            CwTerm::AddEdges { i, j, child } => {
                out.insert(*i);
                out.insert(*j);
                child.collect_labels(out);
            }
            CwTerm::Relabel { from, to, child } => {
                out.insert(*from);
                out.insert(*to);
                child.collect_labels(out);
            }
        }
    }
}

/// A graph together with a label for every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: BTreeMap<String, Label>,
}

#[derive(Default)]
struct Acc {
    names: Vec<String>,
    labels: Vec<Label>,
    edges: Vec<(usize, usize)>,
}

fn eval_into(t: &CwTerm) -> Result<Acc> {
    match t {
        CwTerm::Create { label, name } => {
            if *label == 0 {
                return Err(Error::ZeroLabel);
            }
            Ok(Acc { names: vec![name.clone()], labels: vec![*label], edges: Vec::new() })
        }
        CwTerm::Union(a, b) => {
            let mut left = eval_into(a)?;
            let right = eval_into(b)?;
            let offset = left.names.len();
            left.names.extend(right.names);
            left.labels.extend(right.labels);
            left.edges.extend(right.edges.into_iter().map(|(x, y)| (x + offset, y + offset)));
            Ok(left)
        }
        CwTerm::AddEdges { i, j, child } => {
            if i == j {
                return Err(Error::SelfLabelAdd(*i));
            }
            if *i == 0 || *j == 0 {
                return Err(Error::ZeroLabel);
            }
            let mut acc = eval_into(child)?;
            let with = |l: Label| -> Vec<usize> {
                (0..acc.labels.len()).filter(|&v| acc.labels[v] == l).collect()
            };
            let (left, right) = (with(*i), with(*j));
            for &x in &left {
                for &y in &right {
                    acc.edges.push((x, y));
                }
            }
            Ok(acc)
        }
        CwTerm::Relabel { from, to, child } => {
            if *from == 0 || *to == 0 {
                return Err(Error::ZeroLabel);
            }
            let mut acc = eval_into(child)?;
            for l in &mut acc.labels {
                if *l == *from {
                    *l = *to;
                }
            }
            Ok(acc)
        }
    }
}

/// Evaluates a term to its labeled graph.
pub fn eval_term(t: &CwTerm) -> Result<LabeledGraph> {
    let acc = eval_into(t)?;
    let mut seen = HashSet::new();
    for name in &acc.names {
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateName(name.clone()));
        }
    }
    let graph = Graph::from_indexed(acc.names.len(), |i| acc.names[i].clone(), acc.edges);
    let labels = acc.names.into_iter().zip(acc.labels).collect();
    Ok(LabeledGraph { graph, labels })
}

/// Number of distinct labels occurring anywhere in the term.
pub fn term_width(t: &CwTerm) -> usize {
    let mut labels = BTreeSet::new();
    t.collect_labels(&mut labels);
    labels.len()
}

/// True iff every union has an operand built from exactly one vertex.
pub fn is_linear(t: &CwTerm) -> bool {
    match t {
        CwTerm::Create { .. } => true,
        CwTerm::Union(a, b) => {
            (a.create_count() == 1 || b.create_count() == 1) && is_linear(a) && is_linear(b)
        }
        CwTerm::AddEdges { child, .. } | CwTerm::Relabel { child, .. } => is_linear(child),
    }
}

impl fmt::Display for CwTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CwTerm::Create { label, name } => write!(f, "(v {label} {name})"),
            CwTerm::Union(a, b) => write!(f, "(u {a} {b})"),
            CwTerm::AddEdges { i, j, child } => write!(f, "(add {i} {j} {child})"),
            CwTerm::Relabel { from, to, child } => write!(f, "(ren {from} {to} {child})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(s: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in s.char_indices() {
        let delimiter = ch == '(' || ch == ')' || ch.is_whitespace();
        if delimiter {
            if let Some(b) = start.take() {
                out.push(Token::Atom(&s[b..k]));
            }
            match ch {
                '(' => out.push(Token::Open),
                ')' => out.push(Token::Close),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(k);
        }
    }
    if let Some(b) = start {
        out.push(Token::Atom(&s[b..]));
    }
    out
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: 1, msg: format!("token {}: {}", self.pos, msg.into()) }
    }

    fn next(&mut self) -> Option<Token<'a>> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn atom(&mut self) -> Result<&'a str> {
        match self.next() {
            Some(Token::Atom(a)) => Ok(a),
            _ => Err(self.err("expected an atom")),
        }
    }

    fn label(&mut self) -> Result<Label> {
        let a = self.atom()?;
        match a.parse::<Label>() {
            Ok(0) | Err(_) => Err(self.err(format!("bad label `{a}`"))),
            Ok(l) => Ok(l),
        }
    }

    fn close(&mut self) -> Result<()> {
        match self.next() {
            Some(Token::Close) => Ok(()),
            _ => Err(self.err("expected `)`")),
        }
    }

    fn term(&mut self) -> Result<CwTerm> {
        if self.next() != Some(Token::Open) {
            return Err(self.err("expected `(`"));
        }
        let t = match self.atom()? {
            "v" => {
                let label = self.label()?;
                CwTerm::create(label, self.atom()?)
            }
            "u" => {
                let a = self.term()?;
                CwTerm::union(a, self.term()?)
            }
            "add" => {
                let (i, j) = (self.label()?, self.label()?);
                if i == j {
                    return Err(self.err(format!("add with equal labels {i}")));
                }
                CwTerm::add_edges(i, j, self.term()?)
            }
            "ren" => {
                let (i, j) = (self.label()?, self.label()?);
                CwTerm::relabel(i, j, self.term()?)
            }
            other => return Err(self.err(format!("unknown operator `{other}`"))),
        };
        self.close()?;
        Ok(t)
    }
}

impl FromStr for CwTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<CwTerm> {
        let mut p = Parser { tokens: tokenize(s), pos: 0 };
        let t = p.term()?;
        if p.pos != p.tokens.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }
}
