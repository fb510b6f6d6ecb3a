//! Search for a matching `F` of `H(n)` and an edge `f` in `F` such that
//! `H(n)/(F - f)` has clique-width 3 while `H(n)/F` has clique-width at
//! least 4.
//!
//! Matchings are enumerated up to the automorphisms of `H(n)`, which permute
//! the groups and the four copies inside each group. The orbit of a matching
//! is determined by the groups whose `x` vertex is matched and by the number
//! of matching edges between each pair of groups, taken up to a permutation
//! of the groups. Every orbit is realized by one representative matching and
//! the representatives of one `n` are visited in lexicographic order of their
//! sorted edge lists.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::constructions::{gen_h, x, ycopy, GROUP_SIZE};
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};
use crate::solvers::{cwd_exact, cwd_leq, CwdBudget};
use crate::term::CwTerm;

pub const CHECKPOINT_VERSION: u32 = 1;

/// Largest `n` the orbit enumeration accepts.
pub const MAX_SEARCH_N: usize = 4;

/// A clique-width oracle used by the search.
pub trait CwdBackend {
    /// A width-`k` expression for `g`, or `None` when none exists.
    fn cwd_leq(&self, g: &Graph, k: usize) -> Result<Option<CwTerm>>;

    /// The clique-width of `g` with a witness expression.
    fn cwd_exact(&self, g: &Graph) -> Result<(usize, CwTerm)>;
}

/// Backend built on the exact subset dynamic program.
#[derive(Clone, Copy, Debug)]
pub struct ExactBackend {
    pub budget: CwdBudget,
}

impl Default for ExactBackend {
    fn default() -> Self {
        ExactBackend { budget: CwdBudget { max_vertices: 16, ..CwdBudget::default() } }
    }
}

impl CwdBackend for ExactBackend {
    fn cwd_leq(&self, g: &Graph, k: usize) -> Result<Option<CwTerm>> {
        Ok(cwd_leq(g, k, &self.budget)?.witness)
    }

    fn cwd_exact(&self, g: &Graph) -> Result<(usize, CwTerm)> {
        let out = cwd_exact(g, &self.budget)?;
        Ok((out.value, out.witness))
    }
}

/// Resumable position of the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    /// Current group count.
    pub n: usize,
    /// Index of the next orbit representative for this `n`.
    pub cursor: usize,
    pub candidates_examined: u64,
    /// Candidates the backend could not decide within its budget.
    pub undecided: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl Checkpoint {
    pub fn start() -> Checkpoint {
        Checkpoint { version: CHECKPOINT_VERSION, n: 2, cursor: 0, candidates_examined: 0, undecided: 0, elapsed_ms: None }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("checkpoint serializes")
    }

    pub fn from_json(text: &str) -> Result<Checkpoint> {
        let c: Checkpoint =
            serde_json::from_str(text).map_err(|e| Error::Checkpoint(e.to_string()))?;
        if c.version != CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!(
                "unsupported checkpoint version {} (expected {CHECKPOINT_VERSION})",
                c.version
            )));
        }
        if c.n < 2 {
            return Err(Error::Checkpoint(format!("checkpoint has n = {}", c.n)));
        }
        Ok(c)
    }

    /// The same checkpoint without its elapsed time.
    pub fn without_timing(&self) -> Checkpoint {
        Checkpoint { elapsed_ms: None, ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCandidate {
    pub n: usize,
    pub matching: Vec<Edge>,
    pub edge: Edge,
    pub cwd_before: usize,
    pub before_certificate: String,
    pub cwd_after: usize,
    pub after_certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum SearchOutcome {
    /// A verified witness; the checkpoint points just past its matching.
    Found { witness: WitnessCandidate, checkpoint: Checkpoint },
    /// The budget ran out before the enumeration finished.
    Budget { checkpoint: Checkpoint },
    /// Every orbit for `n <= n_max` was examined without a witness.
    Exhausted { checkpoint: Checkpoint },
}

impl SearchOutcome {
    pub fn checkpoint(&self) -> &Checkpoint {
        match self {
            SearchOutcome::Found { checkpoint, .. }
            | SearchOutcome::Budget { checkpoint }
            | SearchOutcome::Exhausted { checkpoint } => checkpoint,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n_max: usize,
    /// Wall-clock limit; checked before each candidate.
    pub time_limit: Option<Duration>,
    /// Limit on candidates examined in this run.
    pub max_candidates: Option<u64>,
    /// Record elapsed time in checkpoints.
    pub timings: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { n_max: 3, time_limit: None, max_candidates: None, timings: false }
    }
}

/// Orbit invariant: matched `x` vertices and edge counts between groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Shape {
    matched_x: Vec<bool>,
    /// Upper triangle `(i, j)`, `i < j`, row-major.
    between: Vec<u8>,
}

impl Shape {
    fn n(&self) -> usize {
        self.matched_x.len()
    }

    fn pair_index(n: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    fn count(&self, i: usize, j: usize) -> u8 {
        self.between[Shape::pair_index(self.n(), i, j)]
    }

    fn permuted(&self, perm: &[usize]) -> Shape {
        let n = self.n();
        let mut out = Shape { matched_x: vec![false; n], between: vec![0; self.between.len()] };
        for i in 0..n {
            out.matched_x[perm[i]] = self.matched_x[i];
            for j in i + 1..n {
                out.between[Shape::pair_index(n, perm[i], perm[j])] = self.count(i, j);
            }
        }
        out
    }

    fn canonical(&self) -> Shape {
        let mut perm: Vec<usize> = (0..self.n()).collect();
        let mut best = self.clone();
        for_each_permutation(&mut perm, 0, &mut |p| {
            let s = self.permuted(p);
            if s < best {
                best = s;
            }
        });
        best
    }

    fn of_matching(n: usize, f: &[Edge]) -> Result<Shape> {
        let mut s = Shape { matched_x: vec![false; n], between: vec![0; n * (n - 1) / 2] };
        for (a, b) in f {
            let (ga, gb) = (group_of(a)?, group_of(b)?);
            match (ga, gb) {
                ((i, true), (j, false)) | ((j, false), (i, true)) if i == j => s.matched_x[i] = true,
                ((i, false), (j, false)) if i != j => s.between[Shape::pair_index(n, i, j)] += 1,
                _ => return Err(Error::Naming(format!("{a}-{b} is not an edge of H({n})"))),
            }
        }
        Ok(s)
    }

    /// Representative matching: copies of each group are used in ascending
    /// order, first by the group pairs in lexicographic order, then by `x`.
    fn realize(&self) -> Vec<Edge> {
        let n = self.n();
        let mut next = vec![1u8; n];
        let mut f = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for _ in 0..self.count(i, j) {
                    f.push(edge(ycopy(i + 1, next[i]), ycopy(j + 1, next[j])));
                    next[i] += 1;
                    next[j] += 1;
                }
            }
        }
        for i in 0..n {
            if self.matched_x[i] {
                f.push(edge(x(i + 1), ycopy(i + 1, next[i])));
            }
        }
        f.sort();
        f
    }
}

/// `(group index from 0, is the x vertex)`.
fn group_of(v: &str) -> Result<(usize, bool)> {
    use crate::constructions::GroupVertex;
    match v.parse::<GroupVertex>()? {
        GroupVertex::X(i) => Ok((i - 1, true)),
        GroupVertex::Copy(i, _) => Ok((i - 1, false)),
        _ => Err(Error::Naming(format!("`{v}` is not a vertex of H(n)"))),
    }
}

fn for_each_permutation(p: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        for_each_permutation(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// One representative matching per automorphism orbit of matchings in
/// `H(n)`, sorted by edge list.
pub fn matching_orbits(n: usize) -> Result<Vec<Vec<Edge>>> {
    if !(2..=MAX_SEARCH_N).contains(&n) {
        return Err(Error::OutOfRange { what: "n".into(), value: n, min: 2, max: MAX_SEARCH_N });
    }
    let pairs = n * (n - 1) / 2;
    let cap = GROUP_SIZE as usize;
    let mut reps = Vec::new();
    let mut between = vec![0u8; pairs];
    loop {
        let mut load = vec![0usize; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = between[Shape::pair_index(n, i, j)] as usize;
                load[i] += c;
                load[j] += c;
            }
        }
        if load.iter().all(|&l| l <= cap) {
            for xs in 0..1u32 << n {
                let matched_x: Vec<bool> = (0..n).map(|i| xs >> i & 1 == 1).collect();
                if (0..n).any(|i| matched_x[i] && load[i] == cap) {
                    continue;
                }
                let s = Shape { matched_x, between: between.clone() };
                if s.canonical() == s {
                    reps.push(s.realize());
                }
            }
        }
        // odometer over the pair counts
        let mut k = 0;
        loop {
            if k == pairs {
                reps.sort();
                return Ok(reps);
            }
            if (between[k] as usize) < cap {
                between[k] += 1;
                break;
            }
            between[k] = 0;
            k += 1;
        }
    }
}

struct Searcher<'a, B: CwdBackend> {
    backend: &'a B,
    /// Whether the contraction by a canonical shape has clique-width at most 3.
    leq3: HashMap<(usize, Shape), bool>,
}

impl<B: CwdBackend> Searcher<'_, B> {
    fn leq3(&mut self, n: usize, h: &Graph, f: &[Edge]) -> Result<bool> {
        let key = (n, Shape::of_matching(n, f)?.canonical());
        if let Some(&r) = self.leq3.get(&key) {
            return Ok(r);
        }
        let r = self.backend.cwd_leq(&h.contract_edges(f)?.graph, 3)?.is_some();
        self.leq3.insert(key, r);
        Ok(r)
    }

    /// A witness edge of `f`, if any.
    fn examine(&mut self, n: usize, h: &Graph, f: &[Edge]) -> Result<Option<WitnessCandidate>> {
        if f.is_empty() || self.leq3(n, h, f)? {
            return Ok(None);
        }
        for (idx, e) in f.iter().enumerate() {
            let rest: Vec<Edge> = f.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, e)| e.clone()).collect();
            if !self.leq3(n, h, &rest)? {
                continue;
            }
            let before = h.contract_edges(&rest)?.graph;
            if self.backend.cwd_leq(&before, 2)?.is_some() {
                continue;
            }
            let before_term = self
                .backend
                .cwd_leq(&before, 3)?
                .ok_or_else(|| Error::WitnessMismatch("memoized width disagrees".into()))?;
            let after = h.contract_edges(f)?.graph;
            let (cwd_after, after_term) = self.backend.cwd_exact(&after)?;
            if !(4..=6).contains(&cwd_after) {
                return Err(Error::WitnessMismatch(format!(
                    "contraction has clique-width {cwd_after}, outside 4..=6"
                )));
            }
            return Ok(Some(WitnessCandidate {
                n,
                matching: f.to_vec(),
                edge: e.clone(),
                cwd_before: 3,
                before_certificate: before_term.to_string(),
                cwd_after,
                after_certificate: after_term.to_string(),
            }));
        }
        Ok(None)
    }
}

/// Runs the search from `resume` (or the start) until a witness is found,
/// the budget runs out, or every `n <= config.n_max` is exhausted.
pub fn witness_search(
    backend: &impl CwdBackend,
    config: &SearchConfig,
    resume: Option<&Checkpoint>,
) -> Result<SearchOutcome> {
    if !(2..=MAX_SEARCH_N).contains(&config.n_max) {
        return Err(Error::OutOfRange { what: "n_max".into(), value: config.n_max, min: 2, max: MAX_SEARCH_N });
    }
    let start = Instant::now();
    let mut ckpt = resume.cloned().unwrap_or_else(Checkpoint::start);
    let base_elapsed = ckpt.elapsed_ms.unwrap_or(0);
    let stamp = |c: &mut Checkpoint| {
        c.elapsed_ms = config.timings.then(|| base_elapsed + start.elapsed().as_millis() as u64);
    };
    let mut searcher = Searcher { backend, leq3: HashMap::new() };
    let mut examined_here = 0u64;
    while ckpt.n <= config.n_max {
        let n = ckpt.n;
        let orbits = matching_orbits(n)?;
        let h = gen_h(n)?;
        while ckpt.cursor < orbits.len() {
            let out_of_time = config.time_limit.is_some_and(|t| start.elapsed() >= t);
            let out_of_count = config.max_candidates.is_some_and(|m| examined_here >= m);
            if out_of_time || out_of_count {
                stamp(&mut ckpt);
                return Ok(SearchOutcome::Budget { checkpoint: ckpt });
            }
            let f = &orbits[ckpt.cursor];
            let found = match searcher.examine(n, &h, f) {
                Ok(w) => w,
                Err(Error::TooLarge { .. } | Error::BudgetExceeded { .. }) => {
                    ckpt.undecided += 1;
                    None
                }
                Err(e) => return Err(e),
            };
            ckpt.cursor += 1;
            ckpt.candidates_examined += 1;
            examined_here += 1;
            if let Some(witness) = found {
                stamp(&mut ckpt);
                return Ok(SearchOutcome::Found { witness, checkpoint: ckpt });
            }
        }
        ckpt.n += 1;
        ckpt.cursor = 0;
    }
    stamp(&mut ckpt);
    Ok(SearchOutcome::Exhausted { checkpoint: ckpt })
}
