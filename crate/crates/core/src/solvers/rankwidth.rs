//! Cut-rank and exact rank-width by dynamic programming over vertex subsets.

use serde::{Deserialize, Serialize};

use super::gf2::{gf2_rank, rank_of_words, Gf2Matrix};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph accepted by [`rank_width_exact`].
pub const RANK_WIDTH_VERTEX_LIMIT: usize = 16;

/// GF(2) rank of the adjacency submatrix between `x` and the other vertices.
pub fn cut_rank<'a>(g: &Graph, x: impl IntoIterator<Item = &'a str>) -> Result<usize> {
    let mut inside = vec![false; g.vertex_count()];
    for v in x {
        inside[g.index_of(v)?] = true;
    }
    let rows: Vec<usize> = (0..g.vertex_count()).filter(|&i| inside[i]).collect();
    let cols: Vec<usize> = (0..g.vertex_count()).filter(|&i| !inside[i]).collect();
    let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
    for (r, &i) in rows.iter().enumerate() {
        for (c, &j) in cols.iter().enumerate() {
            if g.adjacent(i, j) {
                m.set(r, c, true);
            }
        }
    }
    Ok(gf2_rank(&m))
}

/// Cut-rank of a vertex mask over adjacency masks (at most 64 vertices).
pub(crate) fn cut_rank_mask(adj: &[u64], mask: u64) -> usize {
    rank_of_words(
        (0..adj.len())
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| adj[v] & !mask),
    )
}

/// Unrooted tree whose leaves are the graph's vertices and whose internal
/// nodes have degree 3, stored as a parent array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDecomposition {
    /// Parent of each node; exactly one root has `None`.
    pub parent: Vec<Option<usize>>,
    /// Vertex name for leaf nodes, `None` for internal nodes.
    pub leaf: Vec<Option<String>>,
}

impl BranchDecomposition {
    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.parent.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                deg[i] += 1;
                deg[p] += 1;
            }
        }
        deg
    }

    /// Checks the tree shape and that the leaves are exactly `V(g)`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Error::Naming(format!("invalid branch decomposition: {msg}"));
        let n = self.parent.len();
        if self.leaf.len() != n {
            return Err(bad("length mismatch".into()));
        }
        if self.parent.iter().filter(|p| p.is_none()).count() != 1 {
            return Err(bad("need exactly one root".into()));
        }
        // every node must reach the root without revisiting
        for start in 0..n {
            let (mut cur, mut steps) = (start, 0);
            while let Some(p) = self.parent[cur] {
                if p >= n || steps > n {
                    return Err(bad("parent array is not a tree".into()));
                }
                cur = p;
                steps += 1;
            }
        }
        let deg = self.degrees();
        let mut names: Vec<&str> = Vec::new();
        for i in 0..n {
            match &self.leaf[i] {
                Some(name) => {
                    if deg[i] > 1 {
                        return Err(bad(format!("leaf `{name}` has degree {}", deg[i])));
                    }
                    names.push(name);
                }
                None if deg[i] != 3 => {
                    return Err(bad(format!("internal node {i} has degree {}", deg[i])))
                }
                None => {}
            }
        }
        names.sort_unstable();
        if names.len() != g.vertex_count() || names.iter().zip(g.vertices()).any(|(a, b)| a != b) {
            return Err(bad("leaves are not the vertex set".into()));
        }
        Ok(())
    }

    /// Maximum cut-rank over the tree edges.
    pub fn width(&self, g: &Graph) -> Result<usize> {
        self.validate(g)?;
        let n = self.parent.len();
        let mut below: Vec<Vec<&str>> = vec![Vec::new(); n];
        for i in 0..n {
            if let Some(name) = &self.leaf[i] {
                let mut cur = Some(i);
                while let Some(c) = cur {
                    below[c].push(name);
                    cur = self.parent[c];
                }
            }
        }
        let mut width = 0;
        for i in 0..n {
            if self.parent[i].is_some() {
                width = width.max(cut_rank(g, below[i].iter().copied())?);
            }
        }
        Ok(width)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankWidth {
    pub value: usize,
    pub certificate: BranchDecomposition,
    pub states_explored: usize,
}

/// Exact rank-width. For each subset `X` the DP stores the least `k` such that
/// `X` is a subtree of some branch decomposition with all cut-ranks inside
/// `X` and of `X` itself at most `k`.
pub fn rank_width_exact(g: &Graph) -> Result<RankWidth> {
    let n = g.vertex_count();
    if n > RANK_WIDTH_VERTEX_LIMIT {
        return Err(Error::TooLarge { size: n, limit: RANK_WIDTH_VERTEX_LIMIT });
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let adj = g.adjacency_masks();
    let full = (1u64 << n) - 1;
    let size = 1usize << n;
    let mut best = vec![u8::MAX; size];
    let mut split = vec![0u32; size];
    for x in 1..size {
        let xm = x as u64;
        let own = if xm == full { 0 } else { cut_rank_mask(&adj, xm) as u8 };
        if xm.count_ones() == 1 {
            best[x] = own;
            continue;
        }
        let low = xm & xm.wrapping_neg();
        let rest = xm ^ low;
        // submasks of `rest`, each extended by `low`, excluding all of x
        let mut sub = rest;
        let mut inner = u8::MAX;
        let mut choice = 0;
        loop {
            let s = sub | low;
            if s != xm {
                let w = best[s as usize].max(best[(xm ^ s) as usize]);
                if w < inner || (w == inner && s < choice) {
                    inner = w;
                    choice = s;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[x] = own.max(inner);
        split[x] = choice as u32;
    }
    let mut parent = Vec::new();
    let mut leaf = Vec::new();
    build_tree(g, full, &split, None, &mut parent, &mut leaf);
    if n >= 2 {
        // the root node stands for all of V; splice it out so both halves are
        // joined by a single tree edge
        let kids: Vec<usize> = (0..parent.len()).filter(|&i| parent[i] == Some(0)).collect();
        let (a, b) = (kids[0], kids[1]);
        let mut remap: Vec<Option<usize>> = parent
            .iter()
            .map(|p| p.map(|p| if p == 0 { a } else { p }))
            .collect();
        remap[a] = None;
        remap[b] = Some(a);
        parent = remap.into_iter().skip(1).map(|p| p.map(|p| p - 1)).collect();
        leaf.remove(0);
    }
    Ok(RankWidth {
        value: best[full as usize] as usize,
        certificate: BranchDecomposition { parent, leaf },
        states_explored: size - 1,
    })
}

fn build_tree(
    g: &Graph,
    x: u64,
    split: &[u32],
    up: Option<usize>,
    parent: &mut Vec<Option<usize>>,
    leaf: &mut Vec<Option<String>>,
) {
    let me = parent.len();
    parent.push(up);
    if x.count_ones() == 1 {
        leaf.push(Some(g.name(x.trailing_zeros() as usize).to_string()));
        return;
    }
    leaf.push(None);
    let s = split[x as usize] as u64;
    build_tree(g, s, split, Some(me), parent, leaf);
    build_tree(g, x ^ s, split, Some(me), parent, leaf);
}
