//! End-to-end pipelines and exhaustive property suites.
//!
//! * [`prop1_pipeline`]: contract a matching of `H(m*m)` chosen from a proper
//!   4-edge-coloring of the `m x m` grid, then recover the grid as the
//!   distance-2 graph on the `x` vertices.
//! * [`prop1_alt_pipeline`]: the same contraction in `Hprime(n*n)`, followed by
//!   deletions, a local complementation at the hub and erasures, which leaves
//!   exactly the grid; hence the grid is a vertex-minor of the contraction.
//! * [`prop2_property_suite`] and [`cograph_closure_check`]: exhaustive
//!   checks over small graphs.
//! * [`witness`]: search for a single edge whose contraction pushes the
//!   clique-width of a contraction of `H(n)` above 3.

pub mod witness;

use std::collections::HashMap;
use std::time::Instant;

use crate::builders::{build_linear_term_h, build_term_h};
use crate::constructions::{
    alpha, contraction_set, gen_grid, gen_h, gen_hprime, grid_coloring, hub, itm_as_vertex_minor,
    run_vertex_minor_script, x, GroupVertex, MinorStep, VertexMinorStep,
};
use crate::corpus::{canonical_form, labeled_graphs_up_to};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::report::{Certificate, PipelineReport, StageStat, SuiteReport, WidthFact};
use crate::solvers::{cwd_exact, is_cograph, rank_width_exact, CwdBudget};
use crate::term::{eval_term, is_linear, term_width};

pub use witness::{
    witness_search, Checkpoint, CwdBackend, ExactBackend, SearchConfig, SearchOutcome,
    WitnessCandidate,
};

fn check_range(what: &str, value: usize, min: usize, max: usize) -> Result<()> {
    if value < min || value > max {
        return Err(Error::OutOfRange { what: what.into(), value, min, max });
    }
    Ok(())
}

struct Recorder {
    report: PipelineReport,
    start: Instant,
}

impl Recorder {
    fn new(pipeline: &str, size: usize) -> Recorder {
        Recorder {
            report: PipelineReport {
                pipeline: pipeline.into(),
                size,
                stages: Vec::new(),
                verdict: true,
                failing_stage: None,
                widths: Vec::new(),
                elapsed_ms: None,
            },
            start: Instant::now(),
        }
    }

    fn stage(&mut self, name: &str, g: &Graph) {
        self.report.stages.push(StageStat {
            name: name.into(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        });
    }

    /// Records an audit; the first failing audit names the failing stage.
    fn audit(&mut self, name: &str, ok: bool) -> bool {
        if !ok && self.report.verdict {
            self.report.verdict = false;
            self.report.failing_stage = Some(name.into());
        }
        ok
    }

    fn fact(&mut self, graph: &str, relation: &str, value: usize, certificate: Option<Certificate>) {
        self.report.widths.push(WidthFact {
            graph: graph.into(),
            relation: relation.into(),
            value,
            certificate,
        });
    }

    fn finish(mut self, timings: bool) -> PipelineReport {
        if timings {
            self.report.elapsed_ms = Some(self.start.elapsed().as_millis() as u64);
        }
        self.report
    }
}

/// Contraction pipeline on `H(m*m)` recovering the `m x m` grid.
pub fn prop1_pipeline(m: usize, timings: bool) -> Result<PipelineReport> {
    check_range("m", m, 2, 6)?;
    let n = m * m;
    let mut rec = Recorder::new("prop1", m);

    let h = gen_h(n)?;
    rec.stage(&format!("H_{n}"), &h);
    rec.audit("H counts", h.vertex_count() == 5 * n && h.edge_count() == 8 * n * n - 4 * n);

    let coloring = grid_coloring(m)?;
    let f = contraction_set(&h, &coloring)?;
    rec.audit("contraction set is a matching", crate::constructions::is_matching(&f));

    let k = h.contract_edges(&f)?.graph;
    rec.stage("contracted", &k);

    let xs: Vec<String> = (1..=n).map(x).collect();
    let stable = k.is_stable(xs.iter().map(String::as_str))?;
    rec.audit("x vertices stable after contraction", stable);
    if !stable {
        return Ok(rec.finish(timings));
    }

    let r = alpha(&k, xs.iter().map(String::as_str))?;
    rec.stage("alpha", &r);
    let grid = gen_grid(m)?;
    rec.audit("alpha equals grid", r == grid);

    let t = build_term_h(n)?;
    let ok = term_width(&t) == 3 && eval_term(&t)?.graph == h;
    rec.audit("width-3 term for H", ok);
    rec.fact(&format!("H_{n}"), "cwd<=", term_width(&t), Some(Certificate::Term(t.to_string())));
    let lt = build_linear_term_h(n)?;
    let ok = term_width(&lt) == 4 && is_linear(&lt) && eval_term(&lt)?.graph == h;
    rec.audit("linear width-4 term for H", ok);
    rec.fact(&format!("H_{n}"), "lcwd<=", term_width(&lt), Some(Certificate::Term(lt.to_string())));
    Ok(rec.finish(timings))
}

/// Vertex-minor pipeline on `Hprime(n*n)` recovering the `n x n` grid.
pub fn prop1_alt_pipeline(n: usize, timings: bool) -> Result<PipelineReport> {
    check_range("n", n, 2, 4)?;
    let groups = n * n;
    let mut rec = Recorder::new("prop1alt", n);

    let hp = gen_hprime(groups)?;
    rec.stage(&format!("Hprime_{groups}"), &hp);
    rec.audit(
        "Hprime counts",
        hp.vertex_count() == 5 * groups + 1 && hp.edge_count() == 8 * groups * groups + 6 * groups,
    );

    let coloring = grid_coloring(n)?;
    let f = contraction_set(&hp, &coloring)?;
    let contracted = hp.contract_edges(&f)?;
    let r_prime = contracted.graph;
    rec.stage("contracted", &r_prime);

    let mut zs: Vec<String> = f.iter().map(|(a, _)| contracted.merge_map[a].clone()).collect();
    zs.sort();

    let unused: Vec<String> = r_prime
        .vertices()
        .iter()
        .filter(|v| matches!(v.parse::<GroupVertex>(), Ok(GroupVertex::Copy(..))))
        .filter(|v| !zs.contains(v))
        .cloned()
        .collect();
    let mut script = Vec::new();
    let mut cur = r_prime.delete_vertices(unused.iter().map(String::as_str))?;
    script.extend(unused.iter().map(|v| VertexMinorStep::Delete(v.clone())));
    rec.stage("unused copies deleted", &cur);

    cur = cur.local_complement(&hub())?;
    rec.stage("local complement at y0", &cur);
    cur = cur.delete_vertex(&hub())?;
    rec.stage("y0 deleted", &cur);
    script.push(VertexMinorStep::LocalComplement(hub()));
    script.push(VertexMinorStep::Delete(hub()));

    rec.audit("contracted vertices stable", cur.is_stable(zs.iter().map(String::as_str))?);
    let endpoints_ok = f.iter().all(|(a, b)| {
        let z = contracted.merge_map[a].clone();
        let expected = match (a.parse::<GroupVertex>(), b.parse::<GroupVertex>()) {
            (Ok(GroupVertex::Copy(i, _)), Ok(GroupVertex::Copy(j, _))) => {
                let mut e = vec![x(i), x(j)];
                e.sort();
                e
            }
            _ => return false,
        };
        cur.neighbours(&z).map(|nb| nb == expected).unwrap_or(false)
    });
    rec.audit("contracted vertices have degree 2 on their grid edge", endpoints_ok);
    if !rec.report.verdict {
        return Ok(rec.finish(timings));
    }

    let erase: Vec<MinorStep> = zs.iter().map(|z| MinorStep::Erase(z.clone())).collect();
    let mut erased = cur.clone();
    for z in &zs {
        erased = match erased.erase_vertex(z) {
            Ok(g) => g,
            Err(_) => {
                rec.audit(&format!("erase {z}"), false);
                return Ok(rec.finish(timings));
            }
        };
    }
    rec.stage("erased", &erased);
    let grid = gen_grid(n)?;
    rec.audit("final graph equals grid", erased == grid);

    // the whole sequence as local complementations and deletions only
    script.extend(itm_as_vertex_minor(&cur, &erase)?);
    let via_vm = run_vertex_minor_script(&r_prime, &script)?;
    rec.audit("vertex-minor script reproduces grid", via_vm == grid);

    let rw = rank_width_exact(&grid)?;
    let cert = Certificate::Decomposition(rw.certificate.clone());
    rec.fact(&format!("grid_{n}"), "rwd", rw.value, Some(cert));
    // rank-width does not increase under vertex-minors
    rec.fact("contracted", "rwd>=", rw.value, None);
    Ok(rec.finish(timings))
}

/// Memoized exact widths keyed by isomorphism class.
#[derive(Default)]
pub struct WidthCache {
    budget: CwdBudget,
    map: HashMap<(usize, u64), (usize, usize)>,
}

impl WidthCache {
    /// `(rwd, cwd)` of a graph with at most 11 vertices.
    pub fn widths(&mut self, g: &Graph) -> Result<(usize, usize)> {
        let key = canonical_form(g);
        if let Some(&w) = self.map.get(&key) {
            return Ok(w);
        }
        let w = (rank_width_exact(g)?.value, cwd_exact(g, &self.budget)?.value);
        self.map.insert(key, w);
        Ok(w)
    }
}

/// Every single erase or delete step on every graph: rank-width must not
/// increase, and clique-width must stay within `2^(k+1) - 1`.
pub fn prop2_property_suite<'a>(corpus: impl IntoIterator<Item = &'a Graph>) -> Result<SuiteReport> {
    let mut cache = WidthCache::default();
    let mut report = SuiteReport {
        suite: "prop2".into(),
        graphs_checked: 0,
        steps_checked: 0,
        violations: 0,
        examples: Vec::new(),
    };
    for g in corpus {
        if g.vertex_count() > 8 {
            return Err(Error::TooLarge { size: g.vertex_count(), limit: 8 });
        }
        report.graphs_checked += 1;
        if g.vertex_count() < 2 {
            continue;
        }
        let (rwd, cwd) = cache.widths(g)?;
        let bound = (1usize << (cwd + 1)) - 1;
        for v in g.vertices() {
            let mut steps = vec![(format!("delete {v}"), g.delete_vertex(v)?)];
            if g.degree(v)? == 2 {
                steps.push((format!("erase {v}"), g.erase_vertex(v)?));
            }
            for (what, h) in steps {
                report.steps_checked += 1;
                let (r2, c2) = cache.widths(&h)?;
                if r2 > rwd || c2 > bound {
                    report.violations += 1;
                    if report.examples.len() < 10 {
                        report.examples.push(format!(
                            "{what} on {:?}: rwd {rwd} -> {r2}, cwd {cwd} -> {c2}",
                            g.edges()
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Contracting any single edge of a cograph yields a cograph; checked on all
/// labeled graphs with at most `limit_n` vertices.
pub fn cograph_closure_check(limit_n: usize) -> Result<SuiteReport> {
    check_range("limit_n", limit_n, 1, 6)?;
    let mut report = SuiteReport {
        suite: "cograph-closure".into(),
        graphs_checked: 0,
        steps_checked: 0,
        violations: 0,
        examples: Vec::new(),
    };
    for g in labeled_graphs_up_to(limit_n) {
        if !is_cograph(&g) {
            continue;
        }
        report.graphs_checked += 1;
        for e in g.edges() {
            report.steps_checked += 1;
            let h = g.contract_edges([&e])?.graph;
            if !is_cograph(&h) {
                report.violations += 1;
                if report.examples.len() < 10 {
                    report.examples.push(format!("contract {}-{} in {:?}", e.0, e.1, g.edges()));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edge;

    #[test]
    fn prop1_small() {
        let r = prop1_pipeline(2, false).unwrap();
        assert!(r.verdict, "{r:?}");
        assert_eq!(r.stages[0].vertices, 20);
        assert_eq!(r.stages.last().unwrap().vertices, 4);
        let r3 = prop1_pipeline(3, false).unwrap();
        assert!(r3.verdict);
        assert_eq!((r3.stages[0].vertices, r3.stages[0].edges), (45, 612));
        assert!(prop1_pipeline(1, false).is_err());
        assert!(prop1_pipeline(7, false).is_err());
    }

    #[test]
    fn prop1_alt_small() {
        let r = prop1_alt_pipeline(2, false).unwrap();
        assert!(r.verdict, "{r:?}");
        assert_eq!(r.stages[0].vertices, 21);
        let rwd = r.widths.iter().find(|w| w.relation == "rwd").unwrap();
        assert_eq!(rwd.value, 1);
        assert!(prop1_alt_pipeline(5, false).is_err());
    }

    #[test]
    fn prop2_examples() {
        let tri = Graph::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let c5 = Graph::from_indexed(5, |i| format!("c{i}"), (0..5).map(|i| (i, (i + 1) % 5)));
        let r = prop2_property_suite([&tri, &c5]).unwrap();
        assert!(r.passed());
        assert_eq!(r.graphs_checked, 2);
        // 3 deletions + 3 erasures on the triangle, 5 + 5 on C5
        assert_eq!(r.steps_checked, 16);
        let mut cache = WidthCache::default();
        assert_eq!(cache.widths(&c5).unwrap().0, 2);
        assert_eq!(cache.widths(&c5.erase_vertex("c0").unwrap()).unwrap().0, 1);
    }

    #[test]
    fn cograph_closure_small() {
        let r = cograph_closure_check(4).unwrap();
        assert!(r.passed());
        assert!(cograph_closure_check(7).is_err());
        let c4 = Graph::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
            .unwrap();
        let tri = c4.contract_edges([&edge("a", "b")]).unwrap().graph;
        assert!(is_cograph(&tri));
        assert_eq!(tri.edge_count(), 3);
    }
}
