//! Exact clique-width and linear clique-width for small graphs.
//!
//! A state is a vertex subset `S` with a partition of `S` into at most `k`
//! label classes. A state is feasible when some `k`-expression builds exactly
//! `g[S]` with that labeling, up to renaming labels. Two vertices sharing a
//! label receive the same edges from then on, so every class must consist of
//! vertices with equal neighbourhoods outside `S`; this prunes most states.
//!
//! A non-singleton state arises from a union of feasible states on `S1` and
//! `S2`. At the union the two sides may share labels (a partial pairing of
//! their classes, giving the partition `Q`), then edges are added between
//! whole `Q` classes, then classes are merged by relabeling. The edges of
//! `g` between `S1` and `S2` must be exactly covered by complete `Q`-class
//! pairs, and no edge may join the two halves of one `Q` class.
//!
//! States are packed into a `u64`: four bits per vertex holding the class
//! index plus one (zero when the vertex is outside `S`), with classes
//! numbered by smallest member. This bounds the solver to 16 vertices and
//! 15 labels.
//!
//! False twins (equal open neighbourhoods) are removed before the search and
//! reinserted next to their representative in the witness; this never
//! changes either width.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::term::{eval_term, term_width, CwTerm, Label};

/// Packed encoding of `(S, P)`.
type Code = u64;

const MAX_VERTICES: usize = 16;
const MAX_LABELS: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Arbitrary unions.
    General,
    /// One operand of every union is a single vertex.
    Linear,
}

/// Explicit resource limits for the exact solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CwdBudget {
    /// Largest graph (after twin reduction) the solver accepts; at most 16.
    pub max_vertices: usize,
    /// Largest number of feasible states kept for one decision.
    pub max_states: usize,
    /// Worker threads for a layer of equal-size subsets; 1 runs inline.
    pub jobs: usize,
}

impl Default for CwdBudget {
    fn default() -> Self {
        CwdBudget { max_vertices: 12, max_states: 20_000_000, jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    /// A width-`k` expression for the graph, if one exists.
    pub witness: Option<CwTerm>,
    pub states_explored: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthOutcome {
    pub value: usize,
    pub witness: CwTerm,
    pub states_explored: usize,
}

#[derive(Clone, Copy, Debug)]
enum Back {
    Leaf(usize),
    Union { left: Code, right: Code, q: Code },
}

fn encode(classes: &[u32]) -> Code {
    let mut sorted: Vec<u32> = classes.to_vec();
    sorted.sort_unstable_by_key(|c| c.trailing_zeros());
    let mut code = 0;
    for (idx, &c) in sorted.iter().enumerate() {
        let mut m = c;
        while m != 0 {
            let v = m.trailing_zeros();
            code |= ((idx + 1) as u64) << (4 * v);
            m &= m - 1;
        }
    }
    code
}

/// Classes in canonical order (by smallest member).
fn decode(code: Code) -> Vec<u32> {
    let mut classes: Vec<u32> = Vec::new();
    let mut c = code;
    let mut v = 0;
    while c != 0 {
        let nib = (c & 0xf) as usize;
        if nib != 0 {
            if classes.len() < nib {
                classes.resize(nib, 0);
            }
            classes[nib - 1] |= 1 << v;
        }
        c >>= 4;
        v += 1;
    }
    classes
}

fn subset_of(code: Code) -> u32 {
    decode(code).iter().fold(0, |m, c| m | c)
}

/// Vertices of the twin-reduced graph and where the removed twins go.
struct Reduction {
    core: Graph,
    /// removed vertex name, representative name
    twins: Vec<(String, String)>,
}

fn reduce_false_twins(g: &Graph) -> Reduction {
    let mut keep = vec![true; g.vertex_count()];
    let mut twins = Vec::new();
    let mut seen: HashMap<&[usize], usize> = HashMap::new();
    for v in 0..g.vertex_count() {
        let nbrs = g.neighbour_indices(v);
        match seen.get(nbrs) {
            Some(&rep) => {
                keep[v] = false;
                twins.push((g.name(v).to_string(), g.name(rep).to_string()));
            }
            None => {
                seen.insert(nbrs, v);
            }
        }
    }
    Reduction { core: g.induced_by(|i| keep[i]), twins }
}

/// Puts every removed twin next to its representative: the union containing
/// the representative's leaf becomes `(u (u X rep) twin)`, which keeps
/// linear terms linear.
fn expand_twins(t: CwTerm, twins: &[(String, String)]) -> CwTerm {
    if twins.is_empty() {
        return t;
    }
    let mut by_rep: HashMap<&str, Vec<&str>> = HashMap::new();
    for (v, rep) in twins {
        by_rep.entry(rep.as_str()).or_default().push(v.as_str());
    }
    let attach = |base: CwTerm, label: Label, rep: &str| -> CwTerm {
        match by_rep.get(rep) {
            Some(list) => list.iter().fold(base, |acc, v| CwTerm::union(acc, CwTerm::create(label, *v))),
            None => base,
        }
    };
    fn leaf(t: &CwTerm) -> Option<(Label, &str)> {
        match t {
            CwTerm::Create { label, name } => Some((*label, name.as_str())),
            _ => None,
        }
    }
    fn walk(t: CwTerm, attach: &dyn Fn(CwTerm, Label, &str) -> CwTerm) -> CwTerm {
        match t {
            CwTerm::Union(a, b) => {
                let (a, b) = (*a, *b);
                // the leaf operand goes right so the other side stays intact
                let (other, single) = match (leaf(&a), leaf(&b)) {
                    (_, Some(_)) => (a, b),
                    (Some(_), None) => (b, a),
                    (None, None) => return CwTerm::union(walk(a, attach), walk(b, attach)),
                };
                let (label, name) = leaf(&single).unwrap();
                let name = name.to_string();
                let other = match leaf(&other) {
                    Some((l, n)) => {
                        let n = n.to_string();
                        attach(other, l, &n)
                    }
                    None => walk(other, attach),
                };
                attach(CwTerm::union(other, single), label, &name)
            }
            CwTerm::AddEdges { i, j, child } => CwTerm::add_edges(i, j, walk(*child, attach)),
            CwTerm::Relabel { from, to, child } => CwTerm::relabel(from, to, walk(*child, attach)),
            CwTerm::Create { label, name } => attach(CwTerm::create(label, name.clone()), label, &name),
        }
    }
    walk(t, &attach)
}

struct Dp<'a> {
    g: &'a Graph,
    n: usize,
    adj: Vec<u32>,
    k: usize,
    mode: Mode,
    full: u32,
}

type LayerResult = Vec<(Code, Back)>;

impl Dp<'_> {
    fn outside_key(&self, v: usize, s: u32) -> u32 {
        self.adj[v] & !s & self.full
    }

    fn twin_groups(&self, s: u32) -> Vec<(u32, u32)> {
        let mut groups: Vec<(u32, u32)> = Vec::new();
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let key = self.outside_key(v, s);
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, members)) => *members |= 1 << v,
                None => groups.push((key, 1 << v)),
            }
        }
        groups
    }

    fn splits(&self, s: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        match self.mode {
            Mode::Linear => {
                let mut m = s;
                while m != 0 {
                    let v = m & m.wrapping_neg();
                    m &= m - 1;
                    out.push((s ^ v, v));
                }
            }
            Mode::General => {
                let low = s & s.wrapping_neg();
                let rest = s ^ low;
                let mut sub = rest;
                loop {
                    let s1 = sub | low;
                    if s1 != s {
                        out.push((s1, s ^ s1));
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & rest;
                }
            }
        }
        out
    }

    /// All feasible states on `s`, given the feasible states of smaller sets.
    fn compute(&self, s: u32, feasible: &HashMap<u32, Vec<Code>>) -> LayerResult {
        let groups = self.twin_groups(s);
        if groups.len() > self.k {
            return Vec::new();
        }
        if s.count_ones() == 1 {
            return vec![(encode(&[s]), Back::Leaf(s.trailing_zeros() as usize))];
        }
        let is_root = s == self.full;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (s1, s2) in self.splits(s) {
            let (Some(f1), Some(f2)) = (feasible.get(&s1), feasible.get(&s2)) else {
                continue;
            };
            for &c1 in f1 {
                let a = decode(c1);
                for &c2 in f2 {
                    let b = decode(c2);
                    let mut pairing = vec![None; a.len()];
                    self.pairings(&a, &b, 0, 0, &mut pairing, &mut |q: &[u32]| {
                        if !self.valid_union(s, s1, s2, q) {
                            return false;
                        }
                        let back = Back::Union { left: c1, right: c2, q: encode(q) };
                        if is_root {
                            out.push((encode(q), back));
                            return true;
                        }
                        self.coarsenings(s, q, &groups, &mut |p| {
                            let code = encode(p);
                            if seen.insert(code) {
                                out.push((code, back));
                            }
                        });
                        false
                    });
                    if is_root && !out.is_empty() {
                        return out;
                    }
                }
            }
        }
        out
    }

    /// Enumerates partial pairings of `a`'s classes with `b`'s classes that
    /// leave at most `k` classes; `visit` returns true to stop.
    fn pairings(
        &self,
        a: &[u32],
        b: &[u32],
        i: usize,
        used: u32,
        pairing: &mut Vec<Option<usize>>,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if i == a.len() {
            let paired = used.count_ones() as usize;
            if a.len() + b.len() - paired > self.k {
                return false;
            }
            let mut q: Vec<u32> = a
                .iter()
                .zip(pairing.iter())
                .map(|(&ca, p)| ca | p.map_or(0, |j| b[j]))
                .collect();
            q.extend((0..b.len()).filter(|&j| used >> j & 1 == 0).map(|j| b[j]));
            return visit(&q);
        }
        // remaining a-classes can each absorb at most one b-class
        let remaining = a.len() - i;
        let max_paired = used.count_ones() as usize + remaining.min(b.len() - used.count_ones() as usize);
        if a.len() + b.len() - max_paired > self.k {
            return false;
        }
        pairing[i] = None;
        if self.pairings(a, b, i + 1, used, pairing, visit) {
            return true;
        }
        for j in 0..b.len() {
            if used >> j & 1 == 0 {
                pairing[i] = Some(j);
                if self.pairings(a, b, i + 1, used | 1 << j, pairing, visit) {
                    pairing[i] = None;
                    return true;
                }
            }
        }
        pairing[i] = None;
        false
    }

    fn complete(&self, a: u32, b: u32) -> bool {
        let mut m = a;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.adj[v] & b != b {
                return false;
            }
        }
        true
    }

    fn touches(&self, from: u32, to: u32) -> bool {
        let mut m = from;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.adj[v] & to != 0 {
                return true;
            }
        }
        false
    }

    fn crossing(&self, s1: u32, a: u32, b: u32) -> bool {
        self.touches(a & s1, b & !s1) || self.touches(a & !s1, b & s1)
    }

    fn valid_union(&self, s: u32, s1: u32, _s2: u32, q: &[u32]) -> bool {
        for &c in q {
            // shared label: same outside neighbourhood, no edge between halves
            let v = c.trailing_zeros() as usize;
            let key = self.outside_key(v, s);
            let mut m = c;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.outside_key(u, s) != key {
                    return false;
                }
            }
            if self.touches(c & s1, c & !s1) {
                return false;
            }
        }
        for (x, &a) in q.iter().enumerate() {
            for &b in &q[x + 1..] {
                if self.crossing(s1, a, b) && !self.complete(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Every partition coarser than `q` whose classes stay inside one twin
    /// group of `s`.
    fn coarsenings(&self, _s: u32, q: &[u32], groups: &[(u32, u32)], visit: &mut dyn FnMut(&[u32])) {
        let per_group: Vec<Vec<u32>> = groups
            .iter()
            .map(|&(_, members)| q.iter().copied().filter(|c| c & members != 0).collect())
            .collect();
        let mut current = Vec::new();
        fn rec(
            per_group: &[Vec<u32>],
            gi: usize,
            current: &mut Vec<u32>,
            visit: &mut dyn FnMut(&[u32]),
        ) {
            if gi == per_group.len() {
                visit(current);
                return;
            }
            let items = &per_group[gi];
            let base = current.len();
            set_partitions(items, 0, current, base, &mut |cur| rec(per_group, gi + 1, cur, visit));
        }
        rec(&per_group, 0, &mut current, visit);
    }

    fn solve(&self, budget: &CwdBudget) -> Result<(Option<Code>, HashMap<Code, Back>, usize)> {
        let mut feasible: HashMap<u32, Vec<Code>> = HashMap::new();
        let mut back: HashMap<Code, Back> = HashMap::new();
        let mut total = 0usize;
        let pool = if budget.jobs > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(budget.jobs)
                    .build()
                    .map_err(|e| Error::BudgetExceeded { what: e.to_string(), lower_bound: 0 })?,
            )
        } else {
            None
        };
        for size in 1..=self.n as u32 {
            let layer: Vec<u32> = (1..=self.full).filter(|s| s.count_ones() == size).collect();
            let run = |s: &u32| (*s, self.compute(*s, &feasible));
            let results: Vec<(u32, LayerResult)> = match &pool {
                Some(p) => p.install(|| layer.par_iter().map(run).collect()),
                None => layer.iter().map(run).collect(),
            };
            for (s, states) in results {
                if states.is_empty() {
                    continue;
                }
                total += states.len();
                let codes = states.iter().map(|(c, _)| *c).collect();
                for (c, b) in states {
                    back.entry(c).or_insert(b);
                }
                feasible.insert(s, codes);
            }
            if total > budget.max_states {
                return Err(Error::BudgetExceeded {
                    what: format!("{total} states at subset size {size}"),
                    lower_bound: 0,
                });
            }
        }
        let root = feasible.get(&self.full).and_then(|v| v.first().copied());
        Ok((root, back, total))
    }

    fn term(&self, code: Code, labels: &[Label], back: &HashMap<Code, Back>) -> CwTerm {
        match back[&code] {
            Back::Leaf(v) => CwTerm::create(labels[0], self.g.name(v)),
            Back::Union { left, right, q } => {
                let p = decode(code);
                let qc = decode(q);
                let s1 = subset_of(left);
                let mut pool = (1..=self.k as Label).filter(|l| !labels.contains(l));
                let mut qlabel = vec![0; qc.len()];
                let mut renames = Vec::new();
                for (ci, &pc) in p.iter().enumerate() {
                    let mut first = true;
                    for (j, &c) in qc.iter().enumerate() {
                        if c & pc != 0 {
                            if first {
                                qlabel[j] = labels[ci];
                                first = false;
                            } else {
                                qlabel[j] = pool.next().expect("label pool exhausted");
                                renames.push((qlabel[j], labels[ci]));
                            }
                        }
                    }
                }
                let child_labels = |child: Code| -> Vec<Label> {
                    decode(child)
                        .iter()
                        .map(|&c| qlabel[qc.iter().position(|&x| x & c != 0).unwrap()])
                        .collect()
                };
                let mut t = CwTerm::union(
                    self.term(left, &child_labels(left), back),
                    self.term(right, &child_labels(right), back),
                );
                for (x, &a) in qc.iter().enumerate() {
                    for (y, &b) in qc.iter().enumerate().skip(x + 1) {
                        if self.crossing(s1, a, b) {
                            t = CwTerm::add_edges(qlabel[x], qlabel[y], t);
                        }
                    }
                }
                for (from, to) in renames {
                    t = CwTerm::relabel(from, to, t);
                }
                t
            }
        }
    }
}

/// Enumerates set partitions of `items[i..]`, appending blocks (as unions of
/// items) to `current` after position `base`.
fn set_partitions(
    items: &[u32],
    i: usize,
    current: &mut Vec<u32>,
    base: usize,
    visit: &mut dyn FnMut(&mut Vec<u32>),
) {
    if i == items.len() {
        visit(current);
        return;
    }
    for b in base..current.len() {
        current[b] |= items[i];
        set_partitions(items, i + 1, current, base, visit);
        current[b] &= !items[i];
    }
    current.push(items[i]);
    set_partitions(items, i + 1, current, base, visit);
    current.pop();
}

/// Decides whether `g` has an expression of width at most `k` (linear when
/// `mode` is [`Mode::Linear`]) and returns a verified witness.
pub fn decide(g: &Graph, k: usize, mode: Mode, budget: &CwdBudget) -> Result<Decision> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if k == 0 {
        return Ok(Decision { witness: None, states_explored: 0 });
    }
    let k = k.min(MAX_LABELS);
    let reduced = reduce_false_twins(g);
    let core = &reduced.core;
    let limit = budget.max_vertices.min(MAX_VERTICES);
    if core.vertex_count() > limit {
        return Err(Error::TooLarge { size: core.vertex_count(), limit });
    }
    let n = core.vertex_count();
    let adj = core.adjacency_masks().into_iter().map(|m| m as u32).collect();
    let dp = Dp { g: core, n, adj, k, mode, full: ((1u64 << n) - 1) as u32 };
    let (root, back, states) = dp.solve(budget)?;
    let witness = match root {
        None => None,
        Some(code) => {
            let labels: Vec<Label> = (1..=decode(code).len() as Label).collect();
            let t = expand_twins(dp.term(code, &labels, &back), &reduced.twins);
            verify(g, &t, k, mode)?;
            Some(t)
        }
    };
    Ok(Decision { witness, states_explored: states })
}

fn verify(g: &Graph, t: &CwTerm, k: usize, mode: Mode) -> Result<()> {
    let lg = eval_term(t)?;
    let ok = lg.graph == *g
        && term_width(t) <= k
        && (mode == Mode::General || crate::term::is_linear(t));
    if ok {
        Ok(())
    } else {
        Err(Error::WitnessMismatch(t.to_string()))
    }
}

/// Smallest `k` with a width-`k` expression, with its witness.
pub fn exact(g: &Graph, mode: Mode, budget: &CwdBudget) -> Result<WidthOutcome> {
    let mut states = 0;
    for k in 1..=MAX_LABELS {
        let d = decide(g, k, mode, budget).map_err(|e| match e {
            Error::BudgetExceeded { what, .. } => Error::BudgetExceeded { what, lower_bound: k },
            other => other,
        })?;
        states += d.states_explored;
        if let Some(witness) = d.witness {
            return Ok(WidthOutcome { value: k, witness, states_explored: states });
        }
    }
    Err(Error::BudgetExceeded { what: "label limit".into(), lower_bound: MAX_LABELS + 1 })
}

pub fn cwd_leq(g: &Graph, k: usize, budget: &CwdBudget) -> Result<Decision> {
    decide(g, k, Mode::General, budget)
}

pub fn cwd_exact(g: &Graph, budget: &CwdBudget) -> Result<WidthOutcome> {
    exact(g, Mode::General, budget)
}

pub fn lcwd_leq(g: &Graph, k: usize, budget: &CwdBudget) -> Result<Decision> {
    decide(g, k, Mode::Linear, budget)
}

pub fn lcwd_exact(g: &Graph, budget: &CwdBudget) -> Result<WidthOutcome> {
    exact(g, Mode::Linear, budget)
}
