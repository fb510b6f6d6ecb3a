//! Acceptance suite: one PASS or FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::oracle::oracle_width;
use cwlab::builders::*;
use cwlab::constructions::{gen_g, gen_grid, gen_h, gen_hprime, is_matching};
use cwlab::corpus::{labeled_graphs_up_to, nonisomorphic_graphs, random_sample, DEFAULT_SEED};
use cwlab::experiments::witness::MAX_SEARCH_N;
use cwlab::experiments::*;
use cwlab::solvers::{cut_rank, cwd_exact, cwd_leq, lcwd_exact, rank_width_exact, CwdBudget};
use cwlab::{eval_term, is_linear, term_width, CwTerm, Graph};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn err(e: cwlab::Error) -> String {
    e.to_string()
}

fn indexed(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_indexed(n, |i| format!("v{i}"), edges.iter().copied())
}

fn cycle(n: usize) -> Graph {
    indexed(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

fn complete(n: usize) -> Graph {
    indexed(n, &(0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect::<Vec<_>>())
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for n in 2..=10 {
        let h = gen_h(n).map_err(err)?;
        ensure(h.vertex_count() == 5 * n && h.edge_count() == 8 * n * n - 4 * n, || {
            format!("H({n}) has {} vertices, {} edges", h.vertex_count(), h.edge_count())
        })?;
        let hp = gen_hprime(n).map_err(err)?;
        ensure(hp.vertex_count() == 5 * n + 1 && hp.edge_count() == 8 * n * n + 6 * n, || {
            format!("Hprime({n}) has {} vertices, {} edges", hp.vertex_count(), hp.edge_count())
        })?;
    }
    within(Duration::from_secs(1), start)?;
    Ok("generator counts for n = 2..10".into())
}

fn criterion_2() -> Check {
    let start = Instant::now();
    type Family = (&'static str, fn(usize) -> cwlab::Result<Graph>, fn(usize) -> cwlab::Result<CwTerm>, fn(usize) -> cwlab::Result<CwTerm>);
    let families: [Family; 3] = [
        ("G", gen_g, build_term_g, build_linear_term_g),
        ("H", gen_h, build_term_h, build_linear_term_h),
        ("Hprime", gen_hprime, build_term_hprime, build_linear_term_hprime),
    ];
    for (name, gen, term, linear) in families {
        for n in 2..=30 {
            let g = gen(n).map_err(err)?;
            let t = term(n).map_err(err)?;
            ensure(term_width(&t) == 3 && eval_term(&t).map_err(err)?.graph == g, || {
                format!("{name}({n}) width-3 term")
            })?;
            let l = linear(n).map_err(err)?;
            ensure(term_width(&l) == 4 && is_linear(&l) && eval_term(&l).map_err(err)?.graph == g, || {
                format!("{name}({n}) linear width-4 term")
            })?;
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok("width-3 and linear width-4 terms for n = 2..30".into())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let budget = CwdBudget::default();
    let p4 = indexed(4, &[(0, 1), (1, 2), (2, 3)]);
    let g3 = gen_g(3).map_err(err)?;
    let h2 = gen_h(2).map_err(err)?;
    let grid3 = gen_grid(3).map_err(err)?;
    let cwd_table: [(&str, &Graph, bool, usize); 8] = [
        ("cwd(K5)", &complete(5), false, 2),
        ("cwd(P4)", &p4, false, 3),
        ("cwd(C5)", &cycle(5), false, 3),
        ("cwd(C4)", &cycle(4), false, 2),
        ("cwd(G3)", &g3, false, 3),
        ("lcwd(G3)", &g3, true, 4),
        ("cwd(H2)", &h2, false, 3),
        ("cwd(grid3)", &grid3, false, 4),
    ];
    for (name, g, linear, expected) in cwd_table {
        let out = if linear { lcwd_exact(g, &budget) } else { cwd_exact(g, &budget) }.map_err(err)?;
        let lg = eval_term(&out.witness).map_err(err)?;
        ensure(
            out.value == expected
                && lg.graph == *g
                && term_width(&out.witness) == out.value
                && (!linear || is_linear(&out.witness)),
            || format!("{name} = {} (expected {expected})", out.value),
        )?;
    }
    let rwd_table: [(&str, Graph, usize); 4] = [
        ("rwd(C4)", cycle(4), 1),
        ("rwd(grid3)", grid3.clone(), 2),
        ("rwd(K5)", complete(5), 1),
        ("rwd(C5)", cycle(5), 2),
    ];
    for (name, g, expected) in rwd_table {
        let rw = rank_width_exact(&g).map_err(err)?;
        rw.certificate.validate(&g).map_err(err)?;
        let audited = rw.certificate.width(&g).map_err(err)?;
        ensure(rw.value == expected && audited == expected, || {
            format!("{name} = {} with certificate width {audited} (expected {expected})", rw.value)
        })?;
    }
    within(Duration::from_secs(600), start)?;
    Ok("exact solver table with audited certificates".into())
}

fn criterion_4() -> Check {
    let budget = CwdBudget::default();
    let mut checked = 0;
    for g in labeled_graphs_up_to(5) {
        let (cwd, lcwd) = (
            cwd_exact(&g, &budget).map_err(err)?.value,
            lcwd_exact(&g, &budget).map_err(err)?.value,
        );
        let (ocwd, olcwd) = (oracle_width(&g, false), oracle_width(&g, true));
        ensure(cwd == ocwd && lcwd == olcwd, || {
            format!("{:?}: dp ({cwd}, {lcwd}) oracle ({ocwd}, {olcwd})", g.edges())
        })?;
        checked += 1;
    }
    Ok(format!("dp equals expression oracle on {checked} labeled graphs up to 5 vertices"))
}

fn criterion_5() -> Check {
    let budget = CwdBudget::default();
    let corpus: Vec<Graph> = labeled_graphs_up_to(5).chain(random_sample(DEFAULT_SEED, 200, 6..=7)).collect();
    for g in &corpus {
        let rwd = rank_width_exact(g).map_err(err)?.value;
        let cwd = cwd_exact(g, &budget).map_err(err)?.value;
        ensure(rwd <= cwd && cwd < 1 << (rwd + 1), || {
            format!("{:?}: rwd {rwd}, cwd {cwd}", g.edges())
        })?;
    }
    Ok(format!("rwd <= cwd <= 2^(rwd+1)-1 on {} graphs", corpus.len()))
}

fn pipeline_check(name: &str, sizes: std::ops::RangeInclusive<usize>, limit: u64, f: fn(usize, bool) -> cwlab::Result<cwlab::report::PipelineReport>) -> Check {
    let start = Instant::now();
    for m in sizes.clone() {
        let r = f(m, false).map_err(err)?;
        ensure(r.verdict, || format!("{name}({m}) failed at {:?}", r.failing_stage))?;
    }
    within(Duration::from_secs(limit), start)?;
    Ok(format!("{name} verdict true for sizes {sizes:?}"))
}

fn criterion_8() -> Check {
    let mut graphs = 0;
    for n in 1..=8 {
        for g in nonisomorphic_graphs(n) {
            for v in g.vertices() {
                let back = g.local_complement(v).and_then(|h| h.local_complement(v)).map_err(err)?;
                ensure(back == g, || format!("lc at {v} is not an involution on {:?}", g.edges()))?;
            }
            graphs += 1;
        }
    }
    let sample = random_sample(DEFAULT_SEED, 100, 2..=8);
    let mut cuts = 0u64;
    for g in &sample {
        let names = g.vertices().to_vec();
        for v in &names {
            let h = g.local_complement(v).map_err(err)?;
            for mask in 0u32..1 << names.len() {
                let x: Vec<&str> = (0..names.len()).filter(|i| mask >> i & 1 == 1).map(|i| names[i].as_str()).collect();
                let (a, b) = (cut_rank(g, x.iter().copied()).map_err(err)?, cut_rank(&h, x.iter().copied()).map_err(err)?);
                ensure(a == b, || format!("cut-rank of {x:?} changes {a} -> {b} at {v} on {:?}", g.edges()))?;
                cuts += 1;
            }
        }
    }
    Ok(format!(
        "lc involution on {graphs} isomorphism classes up to 8 vertices, cut-rank invariance on {cuts} cuts"
    ))
}

fn criterion_9() -> Check {
    let corpus: Vec<Graph> = labeled_graphs_up_to(6).collect();
    let r = prop2_property_suite(&corpus).map_err(err)?;
    ensure(r.passed(), || format!("{} violations, e.g. {:?}", r.violations, r.examples))?;
    let c = cograph_closure_check(6).map_err(err)?;
    ensure(c.passed(), || format!("{} cograph violations, e.g. {:?}", c.violations, c.examples))?;
    Ok(format!(
        "prop2 on {} graphs ({} steps), cograph closure on {} cographs ({} contractions)",
        r.graphs_checked, r.steps_checked, c.graphs_checked, c.steps_checked
    ))
}

fn verify_witness(w: &WitnessCandidate) -> Result<(), String> {
    let budget = CwdBudget { max_vertices: 16, ..CwdBudget::default() };
    let h = gen_h(w.n).map_err(err)?;
    ensure(is_matching(&w.matching) && w.matching.iter().all(|(a, b)| h.has_edge(a, b).unwrap_or(false)), || {
        "F is not a matching of H(n)".into()
    })?;
    ensure(w.matching.contains(&w.edge), || "f is not in F".into())?;
    let rest: Vec<_> = w.matching.iter().filter(|e| **e != w.edge).cloned().collect();
    let before = h.contract_edges(&rest).map_err(err)?.graph;
    let after = h.contract_edges(&w.matching).map_err(err)?.graph;
    let bt: CwTerm = w.before_certificate.parse().map_err(err)?;
    let at: CwTerm = w.after_certificate.parse().map_err(err)?;
    ensure(eval_term(&bt).map_err(err)?.graph == before && term_width(&bt) <= 3, || "before certificate".into())?;
    ensure(eval_term(&at).map_err(err)?.graph == after && term_width(&at) == w.cwd_after, || "after certificate".into())?;
    ensure(cwd_leq(&before, 2, &budget).map_err(err)?.witness.is_none(), || "before has width 2".into())?;
    ensure(cwd_leq(&after, 3, &budget).map_err(err)?.witness.is_none(), || "after has width 3".into())?;
    ensure(w.cwd_before == 3 && (4..=6).contains(&w.cwd_after), || {
        format!("widths {} -> {}", w.cwd_before, w.cwd_after)
    })
}

fn criterion_10() -> Check {
    let cfg = SearchConfig {
        n_max: MAX_SEARCH_N,
        time_limit: Some(Duration::from_secs(600)),
        max_candidates: None,
        timings: true,
    };
    let backend = ExactBackend::default();
    let first = witness_search(&backend, &cfg, None).map_err(err)?;
    let second = witness_search(&backend, &cfg, None).map_err(err)?;
    ensure(first.checkpoint().without_timing() == second.checkpoint().without_timing(), || {
        format!("checkpoints differ: {:?} vs {:?}", first.checkpoint(), second.checkpoint())
    })?;
    let c = first.checkpoint();
    match (&first, &second) {
        (SearchOutcome::Found { witness, .. }, SearchOutcome::Found { witness: w2, .. }) => {
            ensure(witness == w2, || "runs report different witnesses".into())?;
            verify_witness(witness)?;
            Ok(format!(
                "deterministic checkpoint (n = {}, cursor {}, {} candidates); witness at n = {} with |F| = {}, cwd 3 -> {}",
                c.n, c.cursor, c.candidates_examined, witness.n, witness.matching.len(), witness.cwd_after
            ))
        }
        (SearchOutcome::Found { .. }, _) | (_, SearchOutcome::Found { .. }) => Err("only one run found a witness".into()),
        _ => Ok(format!(
            "deterministic checkpoint (n = {}, cursor {}, {} candidates, {} undecided); no witness",
            c.n, c.cursor, c.candidates_examined, c.undecided
        )),
    }
}

fn main() {
    let criteria: Vec<(usize, Box<dyn Fn() -> Check>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(criterion_3)),
        (4, Box::new(criterion_4)),
        (5, Box::new(criterion_5)),
        (6, Box::new(|| pipeline_check("prop1", 2..=5, 5, prop1_pipeline))),
        (7, Box::new(|| pipeline_check("prop1alt", 2..=3, 10, prop1_alt_pipeline))),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
        (10, Box::new(criterion_10)),
    ];
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, run) in criteria {
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("criterion {id:>2}: PASS  {msg} [{secs:.2} s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {msg} [{secs:.2} s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
