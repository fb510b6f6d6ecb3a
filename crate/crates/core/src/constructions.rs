//! Concrete graph families and the operations relating them.
//!
//! `G(n)` is a clique `y1..yn` with a pendant `xi` on every `yi`. `H(n)`
//! replaces every `yi` by four pairwise nonadjacent copies `yi_1..yi_4`,
//! `Hprime(n)` replaces it by a `K4` and adds a hub `y0` adjacent to every
//! copy. `grid(n)` is the `n x n` grid on `x1..x{n*n}` in row-major order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

/// Number of copies substituted for each `yi` in `H(n)` and `Hprime(n)`.
pub const GROUP_SIZE: u8 = 4;

/// Vertex names used by the generated families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupVertex {
    /// `x{i}`
    X(usize),
    /// `y{i}` in `G(n)`
    Y(usize),
    /// `y{i}_{c}` in `H(n)` and `Hprime(n)`
    Copy(usize, u8),
    /// `y0`
    Hub,
}

impl fmt::Display for GroupVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupVertex::X(i) => write!(f, "x{i}"),
            GroupVertex::Y(i) => write!(f, "y{i}"),
            GroupVertex::Copy(i, c) => write!(f, "y{i}_{c}"),
            GroupVertex::Hub => write!(f, "y0"),
        }
    }
}

impl FromStr for GroupVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupVertex> {
        let bad = || Error::Naming(format!("`{s}` is not a group vertex name"));
        let index = |t: &str| -> Result<usize> {
            if t.is_empty() || t.starts_with('0') || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        if s == "y0" {
            return Ok(GroupVertex::Hub);
        }
        if let Some(rest) = s.strip_prefix('x') {
            return Ok(GroupVertex::X(index(rest)?));
        }
        let rest = s.strip_prefix('y').ok_or_else(bad)?;
        match rest.split_once('_') {
            None => Ok(GroupVertex::Y(index(rest)?)),
            Some((i, c)) => {
                let c = index(c)?;
                if c > GROUP_SIZE as usize {
                    return Err(bad());
                }
                Ok(GroupVertex::Copy(index(i)?, c as u8))
            }
        }
    }
}

pub fn x(i: usize) -> String {
    GroupVertex::X(i).to_string()
}

pub fn y(i: usize) -> String {
    GroupVertex::Y(i).to_string()
}

pub fn ycopy(i: usize, c: u8) -> String {
    GroupVertex::Copy(i, c).to_string()
}

pub fn hub() -> String {
    GroupVertex::Hub.to_string()
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::SizeOutOfRange(n));
    }
    Ok(())
}

pub fn gen_g(n: usize) -> Result<Graph> {
    check_n(n)?;
    let vertices = (1..=n).flat_map(|i| [x(i), y(i)]);
    let mut edges = Vec::new();
    for i in 1..=n {
        edges.push((x(i), y(i)));
        for j in i + 1..=n {
            edges.push((y(i), y(j)));
        }
    }
    Graph::new(vertices, edges)
}

fn copies() -> impl Iterator<Item = u8> + Clone {
    1..=GROUP_SIZE
}

fn group_edges(n: usize) -> Vec<(String, String)> {
    let mut edges = Vec::new();
    for i in 1..=n {
        for c in copies() {
            edges.push((x(i), ycopy(i, c)));
            for j in i + 1..=n {
                for d in copies() {
                    edges.push((ycopy(i, c), ycopy(j, d)));
                }
            }
        }
    }
    edges
}

pub fn gen_h(n: usize) -> Result<Graph> {
    check_n(n)?;
    let vertices = (1..=n).flat_map(|i| std::iter::once(x(i)).chain(copies().map(move |c| ycopy(i, c))));
    Graph::new(vertices, group_edges(n))
}

pub fn gen_hprime(n: usize) -> Result<Graph> {
    check_n(n)?;
    let vertices = (1..=n)
        .flat_map(|i| std::iter::once(x(i)).chain(copies().map(move |c| ycopy(i, c))))
        .chain(std::iter::once(hub()));
    let mut edges = group_edges(n);
    for i in 1..=n {
        for c in copies() {
            edges.push((hub(), ycopy(i, c)));
            for d in c + 1..=GROUP_SIZE {
                edges.push((ycopy(i, c), ycopy(i, d)));
            }
        }
    }
    Graph::new(vertices, edges)
}

/// Row-major name of grid cell `(r, c)` in an `n x n` grid.
pub fn grid_vertex(n: usize, r: usize, c: usize) -> String {
    x(r * n + c + 1)
}

pub fn gen_grid(n: usize) -> Result<Graph> {
    Ok(grid_coloring(n)?.base)
}

/// An edge coloring with colors `1..=4` in which edges sharing an endpoint
/// get different colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperEdgeColoring {
    base: Graph,
    colors: BTreeMap<Edge, u8>,
}

impl ProperEdgeColoring {
    /// Validates totality, range and properness.
    pub fn new(base: Graph, colors: BTreeMap<Edge, u8>) -> Result<ProperEdgeColoring> {
        let edges = base.edges();
        if colors.len() != edges.len() || edges.iter().any(|e| !colors.contains_key(e)) {
            return Err(Error::Coloring("coloring must cover exactly the edges of the graph".into()));
        }
        for (e, &c) in &colors {
            if !(1..=4).contains(&c) {
                return Err(Error::Coloring(format!("color {c} of {}-{} not in 1..=4", e.0, e.1)));
            }
        }
        for v in base.vertices() {
            let mut used = [false; 5];
            for w in base.neighbours(v)? {
                let c = colors[&edge(v.as_str(), w)] as usize;
                if used[c] {
                    return Err(Error::Coloring(format!("two edges at `{v}` share color {c}")));
                }
                used[c] = true;
            }
        }
        Ok(ProperEdgeColoring { base, colors })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn colors(&self) -> &BTreeMap<Edge, u8> {
        &self.colors
    }

    pub fn color(&self, a: &str, b: &str) -> Option<u8> {
        self.colors.get(&edge(a, b)).copied()
    }

    /// Export as `c <name> <name> <color>` lines.
    pub fn to_text(&self) -> String {
        self.colors.iter().map(|((a, b), c)| format!("c {a} {b} {c}\n")).collect()
    }

    /// Parses `c` lines against a known base graph.
    pub fn parse(base: Graph, text: &str) -> Result<ProperEdgeColoring> {
        let mut colors = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: k + 1, msg };
            match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["c", a, b, c] => {
                    let c: u8 = c.parse().map_err(|_| err(format!("bad color `{c}`")))?;
                    if colors.insert(edge(*a, *b), c).is_some() {
                        return Err(err(format!("edge {a} {b} colored twice")));
                    }
                }
                _ => return Err(err(format!("unrecognized record `{line}`"))),
            }
        }
        ProperEdgeColoring::new(base, colors)
    }
}

/// The grid with horizontal edges colored 1/2 by column parity and vertical
/// edges colored 3/4 by row parity.
pub fn grid_coloring(n: usize) -> Result<ProperEdgeColoring> {
    check_n(n)?;
    let mut colors = BTreeMap::new();
    for r in 0..n {
        for c in 0..n {
            if c + 1 < n {
                let color = if c % 2 == 0 { 1 } else { 2 };
                colors.insert(edge(grid_vertex(n, r, c), grid_vertex(n, r, c + 1)), color);
            }
            if r + 1 < n {
                let color = if r % 2 == 0 { 3 } else { 4 };
                colors.insert(edge(grid_vertex(n, r, c), grid_vertex(n, r + 1, c)), color);
            }
        }
    }
    let vertices = (1..=n * n).map(x);
    let base = Graph::new(vertices, colors.keys().cloned())?;
    ProperEdgeColoring::new(base, colors)
}

fn x_index(name: &str) -> Result<usize> {
    match name.parse::<GroupVertex>() {
        Ok(GroupVertex::X(i)) => Ok(i),
        _ => Err(Error::Naming(format!("base vertex `{name}` is not named x<i>"))),
    }
}

/// For every edge `xi - xj` of color `c`, the edge `yi_c - yj_c` of `h`.
/// The result is a matching because the coloring is proper.
pub fn contraction_set(h: &Graph, r: &ProperEdgeColoring) -> Result<BTreeSet<Edge>> {
    let groups = h
        .vertices()
        .iter()
        .filter(|v| matches!(v.parse::<GroupVertex>(), Ok(GroupVertex::X(_))))
        .count();
    if r.base.vertex_count() != groups {
        return Err(Error::Naming(format!(
            "coloring base has {} vertices but the host graph has {groups} groups",
            r.base.vertex_count()
        )));
    }
    let mut f = BTreeSet::new();
    for ((a, b), &c) in &r.colors {
        let (i, j) = (x_index(a)?, x_index(b)?);
        let e = edge(ycopy(i, c), ycopy(j, c));
        if !h.contains(a) || !h.contains(b) || !h.has_edge(&e.0, &e.1).unwrap_or(false) {
            return Err(Error::Naming(format!("host graph lacks edge {}-{}", e.0, e.1)));
        }
        f.insert(e);
    }
    Ok(f)
}

/// True iff no two edges of `f` share an endpoint.
pub fn is_matching<'a>(f: impl IntoIterator<Item = &'a Edge>) -> bool {
    let mut seen = BTreeSet::new();
    f.into_iter().all(|(a, b)| seen.insert(a) && seen.insert(b))
}

/// The graph on a stable set `x` whose edges join the vertices at distance
/// exactly 2 in `g`.
pub fn alpha<'a>(g: &Graph, x: impl IntoIterator<Item = &'a str>) -> Result<Graph> {
    let x: Vec<&str> = x.into_iter().collect();
    if let Some((a, b)) = g.first_adjacent_pair(x.iter().copied())? {
        return Err(Error::NotStable(a, b));
    }
    let idx: Vec<usize> = x.iter().map(|v| g.index_of(v)).collect::<Result<_>>()?;
    let mut edges = Vec::new();
    for (p, &i) in idx.iter().enumerate() {
        for &j in &idx[p + 1..] {
            // nonadjacent (x is stable), so distance 2 iff a common neighbour
            let common = intersects(g.neighbour_indices(i), g.neighbour_indices(j));
            if common && i != j {
                edges.push((g.name(i), g.name(j)));
            }
        }
    }
    Graph::new(x, edges)
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut p, mut q) = (0, 0);
    while p < a.len() && q < b.len() {
        match a[p].cmp(&b[q]) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// One step of an induced-topological-minor script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorStep {
    Erase(String),
    Delete(String),
}

/// One step of a vertex-minor script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexMinorStep {
    LocalComplement(String),
    Delete(String),
}

pub fn run_minor_script(g: &Graph, script: &[MinorStep]) -> Result<Graph> {
    let mut cur = g.clone();
    for (index, step) in script.iter().enumerate() {
        let fail = |e: Error| Error::InvalidStep { index, msg: e.to_string() };
        cur = match step {
            MinorStep::Erase(v) => cur.erase_vertex(v).map_err(fail)?,
            MinorStep::Delete(v) => cur.delete_vertex(v).map_err(fail)?,
        };
    }
    Ok(cur)
}

pub fn run_vertex_minor_script(g: &Graph, script: &[VertexMinorStep]) -> Result<Graph> {
    let mut cur = g.clone();
    for (index, step) in script.iter().enumerate() {
        let fail = |e: Error| Error::InvalidStep { index, msg: e.to_string() };
        cur = match step {
            VertexMinorStep::LocalComplement(v) => cur.local_complement(v).map_err(fail)?,
            VertexMinorStep::Delete(v) => cur.delete_vertex(v).map_err(fail)?,
        };
    }
    Ok(cur)
}

/// Rewrites an erase/delete script into an equivalent script of local
/// complementations and deletions. Erasing `x` with nonadjacent neighbours
/// becomes a local complementation at `x` followed by deleting `x`; with
/// adjacent neighbours it is just a deletion.
pub fn itm_as_vertex_minor(g: &Graph, script: &[MinorStep]) -> Result<Vec<VertexMinorStep>> {
    let mut cur = g.clone();
    let mut out = Vec::new();
    for (index, step) in script.iter().enumerate() {
        let fail = |e: Error| Error::InvalidStep { index, msg: e.to_string() };
        match step {
            MinorStep::Erase(v) => {
                let nbrs: Vec<String> =
                    cur.neighbours(v).map_err(fail)?.into_iter().map(String::from).collect();
                if nbrs.len() != 2 {
                    return Err(fail(Error::NotDegreeTwo { vertex: v.clone(), degree: nbrs.len() }));
                }
                if !cur.has_edge(&nbrs[0], &nbrs[1]).map_err(fail)? {
                    out.push(VertexMinorStep::LocalComplement(v.clone()));
                }
                out.push(VertexMinorStep::Delete(v.clone()));
                cur = cur.erase_vertex(v).map_err(fail)?;
            }
            MinorStep::Delete(v) => {
                out.push(VertexMinorStep::Delete(v.clone()));
                cur = cur.delete_vertex(v).map_err(fail)?;
            }
        }
    }
    Ok(out)
}
