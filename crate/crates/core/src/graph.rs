//! Simple undirected graphs with string vertex names, and the elementary
//! transformations used throughout the crate: contraction, deletion, local
//! complementation, erasure of degree-2 vertices, distances and stable sets.
//!
//! A [`Graph`] is an immutable value. Vertex names are kept sorted, so all
//! iteration orders are deterministic and equality is name-exact.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered vertex pair, stored with the smaller name first.
pub type Edge = (String, String);

/// Normalizes a pair of names into an [`Edge`].
pub fn edge(a: impl Into<String>, b: impl Into<String>) -> Edge {
    let (a, b) = (a.into(), b.into());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph. Repeated vertices and edges collapse (set semantics);
    /// loops and edges on undeclared vertices are rejected.
    pub fn new<V, E, S, T>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (T, T)>,
        T: Into<String>,
    {
        let set: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        let names: Vec<String> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); names.len()];
        for (a, b) in edges {
            let (a, b) = (a.into(), b.into());
            if a == b {
                return Err(Error::Loop(a));
            }
            let i = lookup(&names, &a)?;
            let j = lookup(&names, &b)?;
            adj[i].push(j);
            adj[j].push(i);
        }
        Ok(Graph::from_parts(names, adj))
    }

    /// Builds from sorted unique names and (possibly unsorted, duplicated)
    /// adjacency lists. Internal constructor; all invariants hold afterwards.
    pub(crate) fn from_parts(names: Vec<String>, mut adj: Vec<Vec<usize>>) -> Graph {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { names, adj }
    }

    /// Graph on vertices named by `name(i)` for `i < n`, with edges given by
    /// index pairs. Names must be pairwise distinct.
    pub fn from_indexed(
        n: usize,
        name: impl Fn(usize) -> String,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Graph {
        let raw: Vec<String> = (0..n).map(&name).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| raw[a].cmp(&raw[b]));
        let mut pos = vec![0; n];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        let names: Vec<String> = order.iter().map(|&i| raw[i].clone()).collect();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            assert_ne!(a, b, "loop in indexed edge list");
            adj[pos[a]].push(pos[b]);
            adj[pos[b]].push(pos[a]);
        }
        Graph::from_parts(names, adj)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Vertex names in ascending order.
    pub fn vertices(&self) -> &[String] {
        &self.names
    }

    /// Edges in ascending order, each with the smaller name first.
    pub fn edges(&self) -> Vec<Edge> {
        self.index_edges()
            .map(|(i, j)| (self.names[i].clone(), self.names[j].clone()))
            .collect()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in ascending order.
    pub fn index_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn index_of(&self, v: &str) -> Result<usize> {
        lookup(&self.names, v)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn contains(&self, v: &str) -> bool {
        self.index_of(v).is_ok()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> Result<bool> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        Ok(self.adjacent(i, j))
    }

    pub(crate) fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Neighbour indices of vertex `i`, ascending.
    pub fn neighbour_indices(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn neighbours(&self, v: &str) -> Result<Vec<&str>> {
        let i = self.index_of(v)?;
        Ok(self.adj[i].iter().map(|&j| self.names[j].as_str()).collect())
    }

    pub fn degree(&self, v: &str) -> Result<usize> {
        Ok(self.adj[self.index_of(v)?].len())
    }

    /// Adjacency rows as bit masks; only for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.vertex_count() <= 64, "adjacency_masks needs <= 64 vertices");
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &j| m | (1 << j)))
            .collect()
    }

    fn indices_of<'a>(&self, vs: impl IntoIterator<Item = &'a str>) -> Result<Vec<usize>> {
        vs.into_iter().map(|v| self.index_of(v)).collect()
    }

    /// Induced subgraph on the vertices whose index satisfies `keep`.
    pub(crate) fn induced_by(&self, keep: impl Fn(usize) -> bool) -> Graph {
        let mut map = vec![usize::MAX; self.names.len()];
        let mut names = Vec::new();
        for i in 0..self.names.len() {
            if keep(i) {
                map[i] = names.len();
                names.push(self.names[i].clone());
            }
        }
        let mut adj = vec![Vec::new(); names.len()];
        for (i, list) in self.adj.iter().enumerate() {
            if map[i] == usize::MAX {
                continue;
            }
            adj[map[i]] = list
                .iter()
                .filter(|&&j| map[j] != usize::MAX)
                .map(|&j| map[j])
                .collect();
        }
        Graph::from_parts(names, adj)
    }

    /// Induced subgraph on the named vertices.
    pub fn induced_subgraph<'a>(&self, keep: impl IntoIterator<Item = &'a str>) -> Result<Graph> {
        let mut mask = vec![false; self.names.len()];
        for i in self.indices_of(keep)? {
            mask[i] = true;
        }
        Ok(self.induced_by(|i| mask[i]))
    }

    /// Removes the given vertices and their incident edges.
    pub fn delete_vertices<'a>(&self, s: impl IntoIterator<Item = &'a str>) -> Result<Graph> {
        let mut gone = vec![false; self.names.len()];
        for i in self.indices_of(s)? {
            gone[i] = true;
        }
        Ok(self.induced_by(|i| !gone[i]))
    }

    pub fn delete_vertex(&self, v: &str) -> Result<Graph> {
        self.delete_vertices([v])
    }

    /// Toggles every adjacency between two distinct neighbours of `v`.
    pub fn local_complement(&self, v: &str) -> Result<Graph> {
        let x = self.index_of(v)?;
        let nbrs = &self.adj[x];
        let mut inside = vec![false; self.names.len()];
        for &a in nbrs {
            inside[a] = true;
        }
        let mut adj = self.adj.clone();
        for &a in nbrs {
            let mut row: Vec<usize> = self.adj[a].iter().copied().filter(|&b| !inside[b]).collect();
            // neighbours of v that were not adjacent to a become adjacent
            row.extend(nbrs.iter().copied().filter(|&b| b != a && !self.adjacent(a, b)));
            adj[a] = row;
        }
        Ok(Graph::from_parts(self.names.clone(), adj))
    }

    /// Erases a vertex of degree exactly 2: joins its two neighbours (if not
    /// already adjacent) and deletes it.
    pub fn erase_vertex(&self, v: &str) -> Result<Graph> {
        let x = self.index_of(v)?;
        let degree = self.adj[x].len();
        if degree != 2 {
            return Err(Error::NotDegreeTwo { vertex: v.to_string(), degree });
        }
        let (y, z) = (self.adj[x][0], self.adj[x][1]);
        let mut adj = self.adj.clone();
        adj[y].push(z);
        adj[z].push(y);
        let joined = Graph::from_parts(self.names.clone(), adj);
        Ok(joined.induced_by(|i| i != x))
    }

    /// Contracts every edge of `f`. Each connected component of `(V, f)` is
    /// merged into its lexicographically smallest member.
    pub fn contract_edges<'a, I>(&self, f: I) -> Result<ContractionResult>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let n = self.names.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (a, b) in f {
            let i = self.index_of(a)?;
            let j = self.index_of(b)?;
            if !self.adjacent(i, j) {
                return Err(Error::MissingEdge(a.clone(), b.clone()));
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            // the smaller index is the lexicographically smaller name
            if ri < rj {
                parent[rj] = ri;
            } else if rj < ri {
                parent[ri] = rj;
            }
        }
        let rep: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        let survivors: Vec<usize> = (0..n).filter(|&i| rep[i] == i).collect();
        let mut new_index = vec![usize::MAX; n];
        for (k, &s) in survivors.iter().enumerate() {
            new_index[s] = k;
        }
        let names: Vec<String> = survivors.iter().map(|&s| self.names[s].clone()).collect();
        let mut adj = vec![Vec::new(); names.len()];
        for (i, j) in self.index_edges() {
            let (a, b) = (new_index[rep[i]], new_index[rep[j]]);
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let merge_map = (0..n)
            .map(|i| (self.names[i].clone(), self.names[rep[i]].clone()))
            .collect();
        Ok(ContractionResult { graph: Graph::from_parts(names, adj), merge_map })
    }

    /// Shortest-path length, `None` when `u` and `v` are disconnected.
    pub fn distance(&self, u: &str, v: &str) -> Result<Option<usize>> {
        let s = self.index_of(u)?;
        let t = self.index_of(v)?;
        Ok(self.bfs(s)[t])
    }

    pub(crate) fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.names.len()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_stable<'a>(&self, x: impl IntoIterator<Item = &'a str>) -> Result<bool> {
        Ok(self.first_adjacent_pair(x)?.is_none())
    }

    /// Some adjacent pair inside `x`, if any.
    pub fn first_adjacent_pair<'a>(
        &self,
        x: impl IntoIterator<Item = &'a str>,
    ) -> Result<Option<(String, String)>> {
        let idx = self.indices_of(x)?;
        let mut inside = vec![false; self.names.len()];
        for &i in &idx {
            inside[i] = true;
        }
        let mut sorted = idx;
        sorted.sort_unstable();
        for &i in &sorted {
            if let Some(&j) = self.adj[i].iter().find(|&&j| inside[j]) {
                return Ok(Some((self.names[i].clone(), self.names[j].clone())));
            }
        }
        Ok(None)
    }

    pub fn complement(&self) -> Graph {
        let n = self.names.len();
        let adj = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && !self.adjacent(i, j)).collect())
            .collect();
        Graph::from_parts(self.names.clone(), adj)
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.names.len()];
        let mut out = Vec::new();
        for s in 0..self.names.len() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let x = comp[k];
                k += 1;
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Same graph with every vertex renamed by `f`; `f` must be injective.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Result<Graph> {
        let names: Vec<String> = self.names.iter().map(|v| f(v)).collect();
        let set: BTreeSet<&String> = names.iter().collect();
        if set.len() != names.len() {
            return Err(Error::Naming("rename is not injective".into()));
        }
        Ok(Graph::from_indexed(names.len(), |i| names[i].clone(), self.index_edges()))
    }
}

fn lookup(names: &[String], v: &str) -> Result<usize> {
    names
        .binary_search_by(|n| n.as_str().cmp(v))
        .map_err(|_| Error::UnknownVertex(v.to_string()))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Result of [`Graph::contract_edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionResult {
    pub graph: Graph,
    /// Every original vertex mapped to the survivor it was merged into.
    pub merge_map: BTreeMap<String, String>,
}

/// Name-exact equality.
pub fn graphs_equal(a: &Graph, b: &Graph) -> bool {
    a == b
}

pub const ISO_VERTEX_LIMIT: usize = 8;

/// Isomorphism test by trying every vertex permutation. Limited to
/// [`ISO_VERTEX_LIMIT`] vertices.
pub fn canonical_iso_equal(a: &Graph, b: &Graph) -> Result<bool> {
    for g in [a, b] {
        if g.vertex_count() > ISO_VERTEX_LIMIT {
            return Err(Error::TooLarge { size: g.vertex_count(), limit: ISO_VERTEX_LIMIT });
        }
    }
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let ma = a.adjacency_masks();
    let mb = b.adjacency_masks();
    let mut perm: Vec<usize> = (0..n).collect();
    let maps = |perm: &[usize]| {
        (0..n).all(|i| {
            let image = (0..n)
                .filter(|&j| ma[i] >> j & 1 == 1)
                .fold(0u64, |m, j| m | 1 << perm[j]);
            image == mb[perm[i]]
        })
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    if maps(&perm) {
        return Ok(true);
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if maps(&perm) {
                return Ok(true);
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(names: &[&str]) -> Graph {
        Graph::new(names.iter().copied(), names.windows(2).map(|w| (w[0], w[1]))).unwrap()
    }

    fn complete(names: &[&str]) -> Graph {
        let mut e = Vec::new();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                e.push((*a, *b));
            }
        }
        Graph::new(names.iter().copied(), e).unwrap()
    }

    #[test]
    fn rejects_loops_and_unknown_endpoints() {
        assert_eq!(Graph::new(["a"], [("a", "a")]), Err(Error::Loop("a".into())));
        assert_eq!(
            Graph::new(["a"], [("a", "b")]),
            Err(Error::UnknownVertex("b".into()))
        );
    }

    #[test]
    fn contraction_fuses_parallel_edges() {
        let tri = complete(&["a", "b", "c"]);
        let r = tri.contract_edges(&[edge("a", "b")]).unwrap();
        assert_eq!(r.graph, complete(&["a", "c"]));
        assert_eq!(r.merge_map["b"], "a");
        assert_eq!(r.merge_map["c"], "c");
    }

    #[test]
    fn empty_contraction_is_identity() {
        let g = path(&["a", "b", "c", "d"]);
        let r = g.contract_edges(&[]).unwrap();
        assert_eq!(r.graph, g);
        assert!(r.merge_map.iter().all(|(k, v)| k == v));
    }

    #[test]
    fn contraction_rejects_non_edges() {
        let g = path(&["a", "b", "c"]);
        assert_eq!(
            g.contract_edges(&[edge("a", "c")]).unwrap_err(),
            Error::MissingEdge("a".into(), "c".into())
        );
    }

    #[test]
    fn contraction_of_a_path_component_uses_smallest_name() {
        let g = path(&["d", "b", "c", "a", "e"]);
        let r = g.contract_edges(&[edge("d", "b"), edge("b", "c")]).unwrap();
        assert_eq!(r.graph.vertices(), ["a", "b", "e"]);
        assert_eq!(r.merge_map["d"], "b");
        assert_eq!(r.merge_map["c"], "b");
        assert!(r.graph.has_edge("b", "a").unwrap());
        assert_eq!(r.graph.edge_count(), 2);
    }

    #[test]
    fn delete_examples() {
        let p3 = path(&["a", "b", "c"]);
        let g = p3.delete_vertex("b").unwrap();
        assert_eq!(g, Graph::new(["a", "c"], Vec::<(&str, &str)>::new()).unwrap());
        let k4 = complete(&["a", "b", "c", "v"]);
        assert_eq!(k4.delete_vertex("v").unwrap(), complete(&["a", "b", "c"]));
        assert!(p3.delete_vertex("zz").is_err());
    }

    #[test]
    fn local_complement_examples() {
        let p3 = path(&["a", "b", "c"]);
        assert_eq!(p3.local_complement("b").unwrap(), complete(&["a", "b", "c"]));
        assert_eq!(p3.local_complement("a").unwrap(), p3);
        let lone = Graph::new(["a", "b", "v"], [("a", "b")]).unwrap();
        assert_eq!(lone.local_complement("v").unwrap(), lone);
        let twice = p3.local_complement("b").unwrap().local_complement("b").unwrap();
        assert_eq!(twice, p3);
        assert!(p3.local_complement("q").is_err());
    }

    #[test]
    fn erase_examples() {
        let p3 = path(&["a", "b", "c"]);
        assert_eq!(p3.erase_vertex("b").unwrap(), complete(&["a", "c"]));
        let tri = complete(&["a", "b", "c"]);
        assert_eq!(tri.erase_vertex("a").unwrap(), complete(&["b", "c"]));
        let p4 = path(&["a", "b", "c", "d"]);
        let g = p4.erase_vertex("b").unwrap().erase_vertex("c").unwrap();
        assert_eq!(g, complete(&["a", "d"]));
        assert_eq!(
            p3.erase_vertex("a").unwrap_err(),
            Error::NotDegreeTwo { vertex: "a".into(), degree: 1 }
        );
    }

    #[test]
    fn distances() {
        let g = Graph::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(g.distance("a", "a").unwrap(), Some(0));
        assert_eq!(g.distance("a", "c").unwrap(), Some(2));
        assert_eq!(g.distance("a", "d").unwrap(), None);
        assert!(g.distance("a", "z").is_err());
    }

    #[test]
    fn stability() {
        let k2 = complete(&["a", "b"]);
        assert!(k2.is_stable(std::iter::empty()).unwrap());
        assert!(!k2.is_stable(["a", "b"]).unwrap());
        assert!(k2.is_stable(["a"]).unwrap());
        assert!(k2.is_stable(["nope"]).is_err());
    }

    #[test]
    fn isomorphism_by_permutation() {
        let c4 = Graph::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
            .unwrap();
        let grid = Graph::new(
            ["x1", "x2", "x3", "x4"],
            [("x1", "x2"), ("x3", "x4"), ("x1", "x3"), ("x2", "x4")],
        )
        .unwrap();
        assert!(!graphs_equal(&c4, &grid));
        assert!(canonical_iso_equal(&c4, &grid).unwrap());
        assert!(!canonical_iso_equal(&path(&["a", "b", "c"]), &complete(&["a", "b", "c"])).unwrap());
        assert!(canonical_iso_equal(&c4, &c4).unwrap());
        let big = complete(&["a", "b", "c", "d", "e", "f", "g", "h", "i"]);
        assert!(matches!(canonical_iso_equal(&big, &big), Err(Error::TooLarge { .. })));
    }
}
