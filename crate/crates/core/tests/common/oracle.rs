//! Brute-force clique-width by closing the set of reachable labeled
//! subgraphs under the four operations.
//!
//! A state is a vertex set, the edges built so far and a labeling, with labels
//! renumbered by first occurrence. Edge additions that would create a
//! non-edge of `g` are dropped since edges are never removed.

use std::collections::HashSet;

use cwlab::Graph;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    set: u8,
    edges: u16,
    /// Label plus one per vertex, zero outside `set`.
    labels: [u8; 6],
}

struct Ctx {
    n: usize,
    k: u8,
    target: u16,
    pair: [[u8; 6]; 6],
}

impl Ctx {
    fn new(g: &Graph, k: usize) -> Ctx {
        let n = g.vertex_count();
        assert!(n <= 6, "oracle supports at most 6 vertices");
        let mut pair = [[0u8; 6]; 6];
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                pair[i][j] = bit;
                pair[j][i] = bit;
                bit += 1;
            }
        }
        let mut target = 0u16;
        for (i, j) in g.index_edges() {
            target |= 1 << pair[i][j];
        }
        Ctx { n, k: k as u8, target, pair }
    }

    fn normalize(&self, mut s: State) -> State {
        let mut map = [0u8; 16];
        let mut next = 1;
        for v in 0..self.n {
            let l = s.labels[v];
            if l == 0 {
                continue;
            }
            if map[l as usize] == 0 {
                map[l as usize] = next;
                next += 1;
            }
            s.labels[v] = map[l as usize];
        }
        s
    }

    fn used(&self, s: &State) -> u8 {
        (0..self.n).map(|v| s.labels[v]).max().unwrap_or(0)
    }

    fn add(&self, s: &State, i: u8, j: u8) -> Option<State> {
        let mut e = s.edges;
        for a in 0..self.n {
            for b in 0..self.n {
                if s.labels[a] == i && s.labels[b] == j {
                    e |= 1 << self.pair[a][b];
                }
            }
        }
        (e & !self.target == 0).then_some(State { edges: e, ..*s })
    }

    fn successors(&self, s: &State, out: &mut Vec<State>) {
        let used = self.used(s);
        for i in 1..=used {
            for j in 1..=used {
                if i == j {
                    continue;
                }
                if i < j {
                    if let Some(t) = self.add(s, i, j) {
                        out.push(t);
                    }
                }
                let mut t = *s;
                for l in t.labels.iter_mut() {
                    if *l == i {
                        *l = j;
                    }
                }
                out.push(self.normalize(t));
            }
        }
    }

    /// All ways to place `b` beside `a`, mapping the labels of `b`
    /// injectively into `1..=k`.
    fn unions(&self, a: &State, b: &State, out: &mut Vec<State>) {
        let lb = self.used(b) as usize;
        let mut map = vec![0u8; lb + 1];
        self.assign(a, b, 1, &mut map, out);
    }

    fn assign(&self, a: &State, b: &State, l: usize, map: &mut Vec<u8>, out: &mut Vec<State>) {
        if l == map.len() {
            let mut t = *a;
            t.set |= b.set;
            t.edges |= b.edges;
            for v in 0..self.n {
                if b.labels[v] != 0 {
                    t.labels[v] = map[b.labels[v] as usize];
                }
            }
            out.push(self.normalize(t));
            return;
        }
        for c in 1..=self.k {
            if map[1..l].contains(&c) {
                continue;
            }
            map[l] = c;
            self.assign(a, b, l + 1, map, out);
        }
    }
}

/// Whether `g` has a width-`k` expression; linear when `linear` is set.
pub fn oracle_leq(g: &Graph, k: usize, linear: bool) -> bool {
    let ctx = Ctx::new(g, k);
    let full = ((1u16 << ctx.n) - 1) as u8;
    let mut seen: HashSet<State> = HashSet::new();
    let mut all: Vec<State> = Vec::new();
    let mut singles: Vec<State> = Vec::new();
    let mut work: Vec<State> = Vec::new();
    for v in 0..ctx.n {
        let mut labels = [0u8; 6];
        labels[v] = 1;
        let s = State { set: 1 << v, edges: 0, labels };
        seen.insert(s);
        singles.push(s);
        work.push(s);
    }
    let mut buf = Vec::new();
    while let Some(s) = work.pop() {
        if s.set == full && s.edges == ctx.target {
            return true;
        }
        buf.clear();
        ctx.successors(&s, &mut buf);
        let partners: &[State] = if linear { &singles } else { &all };
        for p in partners {
            if p.set & s.set == 0 {
                ctx.unions(&s, p, &mut buf);
                if !linear {
                    ctx.unions(p, &s, &mut buf);
                }
            }
        }
        if linear && s.set.count_ones() == 1 {
            for p in all.iter() {
                if p.set & s.set == 0 {
                    ctx.unions(p, &s, &mut buf);
                }
            }
        }
        all.push(s);
        for t in buf.drain(..) {
            if seen.insert(t) {
                work.push(t);
            }
        }
    }
    false
}

/// Smallest `k` with `oracle_leq(g, k, linear)`.
pub fn oracle_width(g: &Graph, linear: bool) -> usize {
    (1..).find(|&k| oracle_leq(g, k, linear)).unwrap()
}
