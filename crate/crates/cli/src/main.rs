use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cwlab::constructions::{alpha, gen_g, gen_grid, gen_h, gen_hprime};
use cwlab::corpus::{labeled_graphs_up_to, random_sample, DEFAULT_SEED};
use cwlab::experiments::*;
use cwlab::io::{format_graph, parse_graph, to_dot};
use cwlab::report::{Parameter, PipelineReport, SuiteReport, WidthRecord};
use cwlab::report::Certificate;
use cwlab::solvers::{cwd_exact, cwd_leq, lcwd_exact, lcwd_leq, rank_width_exact, CwdBudget, WidthOutcome};
use cwlab::{Edge, Error, Graph};

#[derive(Debug, Parser)]
#[command(name = "cwlab", version, about = "Graph-width laboratory for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write results to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for the clique-width solver.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Add elapsed times to the output.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    #[value(name = "G", alias = "g")]
    G,
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "Hprime", alias = "hprime")]
    Hprime,
    #[value(name = "grid")]
    Grid,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PipelineName {
    Prop1,
    Prop1alt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteName {
    Prop2,
    CographClosure,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph family member.
    Gen { family: Family, n: usize },
    /// Contract a set of edges, given as a file of `e a b` lines or as `a-b,c-d`.
    Contract { graph: String, edges: String },
    /// Distance-2 graph on a stable set, given as a file of names or as `a,b,c`.
    Alpha { graph: String, set: String },
    /// Exact width with a certificate.
    Width {
        #[arg(value_parser = parse_parameter)]
        parameter: Parameter,
        graph: String,
        /// Give up above this width.
        #[arg(long)]
        max_k: Option<usize>,
        /// Largest number of solver states per decision.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Run a construction pipeline.
    Pipeline { name: PipelineName, size: usize },
    /// Run an exhaustive property suite.
    Check {
        suite: SuiteName,
        /// Largest vertex count of the exhaustive corpus.
        #[arg(long)]
        max_n: Option<usize>,
        /// Additional seeded random graphs on 6 or 7 vertices (prop2 only).
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Search for a single-edge contraction witness.
    Witness {
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: Option<u64>,
        /// Stop after examining this many candidates.
        #[arg(long)]
        max_candidates: Option<u64>,
        /// Resume from a checkpoint file.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Write the final checkpoint to this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
    /// Graphviz rendering of a graph file.
    ExportDot { graph: String },
}

fn parse_parameter(s: &str) -> Result<Parameter, String> {
    s.parse()
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure { code: 2, msg: msg.into() }
    }

    fn verification(msg: impl Into<String>) -> Failure {
        Failure { code: 1, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExceeded { .. } | Error::WitnessMismatch(_) | Error::InvalidStep { .. } => {
                Failure::verification(e.to_string())
            }
            _ => Failure::usage(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    /// Exit with the verification-failure code after writing.
    failed: Option<String>,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, failed: None }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn load_graph(path: &str) -> Result<Graph, Failure> {
    parse_graph(&read_input(path)?).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn graph_id(path: &str) -> String {
    Path::new(path).file_stem().and_then(|s| s.to_str()).unwrap_or(path).to_string()
}

fn parse_edges(arg: &str) -> Result<Vec<Edge>, Failure> {
    if Path::new(arg).is_file() {
        let text = read_input(arg)?;
        let mut edges = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["e", a, b] | [a, b] => edges.push(cwlab::edge(*a, *b)),
                _ => return Err(Failure::usage(format!("{arg}:{}: expected `e a b`", k + 1))),
            }
        }
        return Ok(edges);
    }
    arg.split(',')
        .filter(|s| !s.is_empty())
        .map(|p| match p.split_once('-') {
            Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok(cwlab::edge(a, b)),
            _ => Err(Failure::usage(format!("malformed edge `{p}` (expected a-b)"))),
        })
        .collect()
}

fn parse_names(arg: &str) -> Result<Vec<String>, Failure> {
    if Path::new(arg).is_file() {
        let text = read_input(arg)?;
        return Ok(text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| l.strip_prefix("v ").unwrap_or(l).trim().to_string())
            .collect());
    }
    Ok(arg.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect())
}

fn graph_json(g: &Graph) -> serde_json::Value {
    json!({ "vertices": g.vertices(), "edges": g.edges() })
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit_graph(cli: &Cli, g: &Graph) -> String {
    match cli.format {
        Format::Json => pretty(&graph_json(g)),
        Format::Text => format_graph(g),
    }
}

fn width(cli: &Cli, parameter: Parameter, path: &str, max_k: Option<usize>, budget: Option<usize>) -> Result<Output, Failure> {
    let g = load_graph(path)?;
    let id = graph_id(path);
    let start = Instant::now();
    let mut record = match parameter {
        Parameter::Rwd => {
            let rw = rank_width_exact(&g)?;
            if let Some(k) = max_k.filter(|&k| rw.value > k) {
                return Err(Failure::verification(format!("{id}: rwd exceeds {k}")));
            }
            WidthRecord::from_rank_width(&id, &rw)
        }
        Parameter::Cwd | Parameter::Lcwd => {
            let mut b = CwdBudget { jobs: cli.jobs.max(1), ..CwdBudget::default() };
            if let Some(states) = budget {
                b.max_states = states;
            }
            let linear = parameter == Parameter::Lcwd;
            let out = match max_k {
                None if linear => lcwd_exact(&g, &b)?,
                None => cwd_exact(&g, &b)?,
                Some(k) => {
                    let mut states = 0;
                    let mut found = None;
                    for j in 1..=k {
                        let d = if linear { lcwd_leq(&g, j, &b)? } else { cwd_leq(&g, j, &b)? };
                        states += d.states_explored;
                        if let Some(witness) = d.witness {
                            found = Some(WidthOutcome { value: j, witness, states_explored: states });
                            break;
                        }
                    }
                    found.ok_or_else(|| Failure::verification(format!("{id}: {parameter} exceeds {k}")))?
                }
            };
            WidthRecord::from_term(&id, parameter, &out)
        }
    };
    if cli.timings {
        record.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(&record),
        Format::Text => {
            let cert = match &record.certificate {
                Certificate::Term(t) => t.clone(),
                Certificate::Decomposition(d) => serde_json::to_string(d).expect("serializable"),
            };
            format!("{id} {} = {}\n{cert}\n", record.parameter, record.value)
        }
    }))
}

fn pipeline_text(r: &PipelineReport) -> String {
    let mut s = format!("{} size {}\n", r.pipeline, r.size);
    for st in &r.stages {
        s += &format!("  {:<28} |V| = {:>4}  |E| = {:>6}\n", st.name, st.vertices, st.edges);
    }
    for w in &r.widths {
        s += &format!("  {} {} {}\n", w.relation, w.graph, w.value);
    }
    s += &format!("verdict {}\n", if r.verdict { "true" } else { "false" });
    if let Some(f) = &r.failing_stage {
        s += &format!("failing stage {f}\n");
    }
    if let Some(ms) = r.elapsed_ms {
        s += &format!("elapsed {ms} ms\n");
    }
    s
}

fn suite_text(r: &SuiteReport) -> String {
    let mut s = format!(
        "{}: {} graphs, {} steps, {} violations\n",
        r.suite, r.graphs_checked, r.steps_checked, r.violations
    );
    for e in &r.examples {
        s += &format!("  {e}\n");
    }
    s
}

fn witness(cli: &Cli, budget: Option<u64>, max_candidates: Option<u64>, resume: Option<&Path>, checkpoint: Option<&Path>, max_n: usize) -> Result<Output, Failure> {
    let resume = match resume {
        None => None,
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
            Some(Checkpoint::from_json(&text)?)
        }
    };
    let config = SearchConfig {
        n_max: max_n,
        time_limit: budget.map(Duration::from_secs),
        max_candidates,
        timings: cli.timings,
    };
    let backend = ExactBackend { budget: CwdBudget { max_vertices: 16, jobs: cli.jobs.max(1), ..CwdBudget::default() } };
    let outcome = witness_search(&backend, &config, resume.as_ref())?;
    if let Some(p) = checkpoint {
        fs::write(p, outcome.checkpoint().to_json() + "\n")
            .map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
    }
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(&outcome),
        Format::Text => {
            let c = outcome.checkpoint();
            let head = match &outcome {
                SearchOutcome::Found { witness, .. } => format!(
                    "witness: n = {}, |F| = {}, f = {}-{}, cwd {} -> {}\n",
                    witness.n,
                    witness.matching.len(),
                    witness.edge.0,
                    witness.edge.1,
                    witness.cwd_before,
                    witness.cwd_after
                ),
                SearchOutcome::Budget { .. } => "budget exhausted\n".to_string(),
                SearchOutcome::Exhausted { .. } => format!("no witness for n <= {max_n}\n"),
            };
            format!(
                "{head}checkpoint: n = {}, cursor = {}, candidates = {}, undecided = {}\n",
                c.n, c.cursor, c.candidates_examined, c.undecided
            )
        }
    }))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Gen { family, n } => {
            let g = match family {
                Family::G => gen_g(*n),
                Family::H => gen_h(*n),
                Family::Hprime => gen_hprime(*n),
                Family::Grid => gen_grid(*n),
            }?;
            Ok(Output::ok(emit_graph(cli, &g)))
        }
        Command::Contract { graph, edges } => {
            let g = load_graph(graph)?;
            let f = parse_edges(edges)?;
            let r = g.contract_edges(&f)?;
            Ok(Output::ok(match cli.format {
                Format::Json => pretty(&json!({ "graph": graph_json(&r.graph), "merge_map": r.merge_map })),
                Format::Text => format_graph(&r.graph),
            }))
        }
        Command::Alpha { graph, set } => {
            let g = load_graph(graph)?;
            let names = parse_names(set)?;
            let r = alpha(&g, names.iter().map(String::as_str))?;
            Ok(Output::ok(emit_graph(cli, &r)))
        }
        Command::Width { parameter, graph, max_k, budget } => width(cli, *parameter, graph, *max_k, *budget),
        Command::Pipeline { name, size } => {
            let r = match name {
                PipelineName::Prop1 => prop1_pipeline(*size, cli.timings),
                PipelineName::Prop1alt => prop1_alt_pipeline(*size, cli.timings),
            }?;
            let text = match cli.format {
                Format::Json => pretty(&r),
                Format::Text => pipeline_text(&r),
            };
            let failed = (!r.verdict).then(|| format!("pipeline failed at {}", r.failing_stage.clone().unwrap_or_default()));
            Ok(Output { text, failed })
        }
        Command::Check { suite, max_n, random } => {
            let r = match suite {
                SuiteName::Prop2 => {
                    let n = max_n.unwrap_or(5);
                    if !(1..=8).contains(&n) {
                        return Err(Failure::usage("--max-n must lie in 1..=8 for prop2"));
                    }
                    let mut corpus: Vec<Graph> = labeled_graphs_up_to(n.min(6)).collect();
                    if n > 6 {
                        return Err(Failure::usage("exhaustive prop2 corpora go up to 6 vertices; use --random for larger graphs"));
                    }
                    corpus.extend(random_sample(cli.seed, *random, 6..=7));
                    prop2_property_suite(&corpus)?
                }
                SuiteName::CographClosure => cograph_closure_check(max_n.unwrap_or(6))?,
            };
            let text = match cli.format {
                Format::Json => pretty(&r),
                Format::Text => suite_text(&r),
            };
            let failed = (!r.passed()).then(|| format!("{} violations", r.violations));
            Ok(Output { text, failed })
        }
        Command::Witness { budget, max_candidates, resume, checkpoint, max_n } => {
            witness(cli, *budget, *max_candidates, resume.as_deref(), checkpoint.as_deref(), *max_n)
        }
        Command::ExportDot { graph } => {
            let g = load_graph(graph)?;
            Ok(Output::ok(to_dot(&g, &graph_id(graph))))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(p) => fs::write(p, &out.text).map_err(|e| format!("{}: {e}", p.display())),
                None => io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match out.failed {
                Some(msg) => {
                    eprintln!("verification failed: {msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
