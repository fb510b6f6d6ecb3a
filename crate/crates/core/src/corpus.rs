//! Graph corpora for exhaustive and sampled property checks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Default seed for every randomized corpus.
pub const DEFAULT_SEED: u64 = 20_130_101;

/// Vertex name used by corpus graphs.
pub fn vertex_name(i: usize) -> String {
    format!("v{i}")
}

/// Graph on `v0..v{n-1}` whose edges are the set bits of `bits` over the
/// pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_indexed(n, vertex_name, edges)
}

/// All `2^(n(n-1)/2)` labeled graphs on `n` vertices.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(pairs < 40, "too many labeled graphs on {n} vertices");
    (0..1u64 << pairs).map(move |bits| graph_from_bits(n, bits))
}

/// All labeled graphs with `1..=max_n` vertices.
pub fn labeled_graphs_up_to(max_n: usize) -> impl Iterator<Item = Graph> {
    (1..=max_n).flat_map(labeled_graphs)
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_indexed(n, vertex_name, edges)
}

/// `count` graphs with sizes drawn uniformly from `sizes` and edge
/// probability one half, reproducible from `seed`.
pub fn random_sample(seed: u64, count: usize, sizes: std::ops::RangeInclusive<usize>) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(sizes.clone());
            random_graph(n, 0.5, &mut rng)
        })
        .collect()
}

/// Canonical form of a graph with at most 11 vertices: the vertex count and
/// the largest upper-triangle adjacency code over all orderings that respect
/// the stable color-refinement cells.
pub fn canonical_form(g: &Graph) -> (usize, u64) {
    let n = g.vertex_count();
    assert!(n <= 11, "canonical_form supports at most 11 vertices");
    let adj = g.adjacency_masks();
    let colors = refine(&adj);
    let mut order = Vec::with_capacity(n);
    let mut best: Option<u64> = None;
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut by_color: Vec<usize> = (0..n).collect();
    by_color.sort_by_key(|&v| colors[v]);
    let cell_of_position: Vec<usize> = by_color.iter().map(|&v| colors[v]).collect();
    search(&adj, &colors, &cell_of_position, &mut order, 0, 0, total_bits, &mut best);
    (n, best.unwrap_or(0))
}

#[allow(clippy::too_many_arguments)]
fn search(
    adj: &[u64],
    colors: &[usize],
    cells: &[usize],
    order: &mut Vec<usize>,
    code: u64,
    bits: usize,
    total: usize,
    best: &mut Option<u64>,
) {
    let n = adj.len();
    if let Some(b) = *best {
        let prefix = if bits == 0 { 0 } else { b >> (total - bits) };
        if code < prefix {
            return;
        }
    }
    if order.len() == n {
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    }
    let pos = order.len();
    for v in 0..n {
        if colors[v] != cells[pos] || order.contains(&v) {
            continue;
        }
        let mut c = code;
        for &u in order.iter() {
            c = c << 1 | (adj[u] >> v & 1);
        }
        order.push(v);
        search(adj, colors, cells, order, c, bits + pos, total, best);
        order.pop();
    }
}

/// Stable coloring by iterated degree refinement, with colors numbered by the
/// sorted order of their signatures (so the coloring is isomorphism
/// invariant).
fn refine(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = vec![0; n];
    let mut count = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> =
                    (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colors = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        if distinct.len() == count {
            return colors;
        }
        count = distinct.len();
    }
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// built by extending the classes on `n - 1` vertices by one vertex.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 9, "isomorphism-class enumeration supports at most 9 vertices");
    if n == 0 {
        return vec![Graph::default()];
    }
    let mut reps: Vec<Graph> = vec![graph_from_bits(1, 0)];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &reps {
            let base: Vec<(usize, usize)> = g.index_edges().collect();
            for nbrs in 0..1u32 << (size - 1) {
                let mut edges = base.clone();
                edges.extend((0..size - 1).filter(|&u| nbrs >> u & 1 == 1).map(|u| (u, size - 1)));
                let h = Graph::from_indexed(size, vertex_name, edges);
                if seen.insert(canonical_form(&h)) {
                    next.push(h);
                }
            }
        }
        reps = next;
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_iso_equal;

    #[test]
    fn labeled_counts() {
        assert_eq!(labeled_graphs(5).count(), 1024);
        assert_eq!(labeled_graphs_up_to(4).count(), 1 + 2 + 8 + 64);
    }

    #[test]
    fn class_counts_match_known_sequence() {
        // numbers of unlabeled graphs on n vertices
        for (n, count) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)] {
            assert_eq!(nonisomorphic_graphs(n).len(), count, "n = {n}");
        }
    }

    #[test]
    fn canonical_form_agrees_with_permutation_search() {
        let sample = random_sample(7, 300, 3..=6);
        for pair in sample.chunks(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let same = canonical_form(a) == canonical_form(b);
            assert_eq!(same, canonical_iso_equal(a, b).unwrap());
        }
        // a relabeled copy always agrees
        for g in random_sample(9, 50, 2..=8) {
            let n = g.vertex_count();
            let shuffled = g.rename(|v| vertex_name(n - 1 - v[1..].parse::<usize>().unwrap())).unwrap();
            assert_eq!(canonical_form(&g), canonical_form(&shuffled));
        }
    }

    #[test]
    fn random_sample_is_reproducible() {
        assert_eq!(random_sample(1, 10, 6..=7), random_sample(1, 10, 6..=7));
        assert!(random_sample(1, 10, 6..=7).iter().all(|g| (6..=7).contains(&g.vertex_count())));
    }
}
