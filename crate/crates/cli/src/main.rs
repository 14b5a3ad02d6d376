//! `orderpoly`: compute, verify and scan from the command line.
//!
//! Every run prints one JSON report line on stdout. Exit codes: 0 pass,
//! 1 theorem finding, 2 parse error, 3 precondition or limit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use orderpoly_core::gn::gn_membership;
use orderpoly_core::order_poly::{order_polynomial, reciprocity_check, strict_order_polynomial};
use orderpoly_core::psi::{
    chromatic, delta_poly, digraph_witnesses, graph_delta_histogram, graph_witnesses, psi_decomposition_check,
    psi_digraph, psi_graph, verify_graph_identity,
};
use orderpoly_core::relabel::{
    delta_diff_turning, sink_elimination_orderings, sink_elimination_sequence, theorem_defect, turning_vertex,
};
use orderpoly_core::scan::{run_scan, Class, Limits, ScanConfig};
use orderpoly_core::structures::parse;
use orderpoly_core::{
    AcyclicDigraph, BinomPoly, Error, Finding, Instance, LabeledGraph, Ordering, RatPoly, Vertex, ZPoly,
};

#[derive(Parser)]
#[command(
    name = "orderpoly",
    version,
    about = "Ordering-sum, order and chromatic polynomials of small graphs and digraphs"
)]
struct Cli {
    /// Worker threads for parallel enumeration (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Add elapsed wall-clock milliseconds to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one object computed from an instance file.
    Compute {
        path: PathBuf,
        #[arg(long, value_enum)]
        what: What,
    },
    /// Run a verification on an instance file.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Sink-elimination ordering for `gamma`, e.g. 2,1,3 (default: all).
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<Vertex>>,
        /// Vertex for `turning` (default: every turning vertex).
        #[arg(long)]
        vertex: Option<Vertex>,
    },
    /// Run a named check over every instance of a class.
    Scan {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        check: String,
        /// Label pool {1..pool} for digraphs (default: the pool limit).
        #[arg(long)]
        pool: Option<Vertex>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Chromatic,
    Psi,
    Omega,
    Delta,
    Witnesses,
    Defect,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Identity,
    Decomposition,
    Reciprocity,
    Gamma,
    Turning,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Graphs,
    Digraphs,
    Trees,
}

impl From<ClassArg> for Class {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Graphs => Class::Graphs,
            ClassArg::Digraphs => Class::Digraphs,
            ClassArg::Trees => Class::Trees,
        }
    }
}

/// What a command produced: result fields, plus findings when a check failed.
struct Outcome {
    instance: Option<String>,
    results: Map<String, Value>,
    findings: Vec<Finding>,
}

impl Outcome {
    fn new(instance: Option<&Instance>) -> Self {
        Outcome { instance: instance.map(Instance::to_text), results: Map::new(), findings: Vec::new() }
    }

    fn put(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }
}

fn num(c: &impl ToString) -> Value {
    Value::Number(serde_json::from_str(&c.to_string()).expect("decimal integer"))
}

/// Both bases for a polynomial naturally in the binomial basis.
fn binom_both(p: &BinomPoly) -> Value {
    json!({ "binom": p.to_json(), "monomial": p.to_monomial().to_json() })
}

/// Both bases for a monomial polynomial; the binomial form is null when not integral.
fn monomial_both(p: &RatPoly, degree: usize) -> Value {
    let binom = BinomPoly::from_monomial(p, degree).ok().map(|b| b.to_json());
    json!({ "monomial": p.to_json(), "binom": binom })
}

fn defect_json(d: &BinomPoly) -> Value {
    json!({ "d": d.to_vec().iter().map(num).collect::<Vec<_>>(), "binom": d.to_json() })
}

fn zpoly(p: &ZPoly) -> Value {
    p.to_json()
}

fn need_graph(inst: &Instance) -> Result<&LabeledGraph, Error> {
    match inst {
        Instance::Graph(g) => Ok(g),
        Instance::Digraph(_) => Err(Error::PreconditionViolated("this operation needs a graph".into())),
    }
}

fn need_digraph(inst: &Instance) -> Result<&AcyclicDigraph, Error> {
    match inst {
        Instance::Digraph(d) => Ok(d),
        Instance::Graph(_) => Err(Error::PreconditionViolated("this operation needs a digraph".into())),
    }
}

fn load(path: &Path) -> Result<Instance, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, message: format!("cannot read {}: {e}", path.display()) })?;
    parse(&text)
}

fn compute(inst: &Instance, what: What) -> Result<Outcome, Error> {
    let mut out = Outcome::new(Some(inst));
    match (what, inst) {
        (What::Chromatic, _) => {
            let g = need_graph(inst)?;
            out.put("chromatic", monomial_both(&chromatic(g), g.order()));
        }
        (What::Psi, Instance::Graph(g)) => out.put("psi", binom_both(&psi_graph(g))),
        (What::Psi, Instance::Digraph(d)) => out.put("psi", binom_both(&psi_digraph(d))),
        (What::Omega, _) => {
            let d = need_digraph(inst)?;
            let p = d.poset();
            out.put("omega", monomial_both(&order_polynomial(&p)?, d.order()));
            out.put("strict_omega", monomial_both(&strict_order_polynomial(&p)?, d.order()));
        }
        (What::Delta, Instance::Graph(g)) => out.put("delta", zpoly(&ZPoly::from_histogram(&graph_delta_histogram(g)))),
        (What::Delta, Instance::Digraph(d)) => out.put("delta", zpoly(&delta_poly(d))),
        (What::Witnesses, Instance::Graph(g)) => {
            out.put("witnesses", serde_json::to_value(graph_witnesses(g)).expect("serialisable"))
        }
        (What::Witnesses, Instance::Digraph(d)) => {
            out.put("witnesses", serde_json::to_value(digraph_witnesses(d)).expect("serialisable"))
        }
        (What::Defect, Instance::Graph(g)) => {
            let r = verify_graph_identity(g)?;
            let d = r
                .defect
                .ok_or_else(|| Error::PreconditionViolated(format!("defect needs n ≥ 3, got {}", g.order())))?;
            out.put("defect", defect_json(&d));
        }
        (What::Defect, Instance::Digraph(d)) => out.put("defect", defect_json(&theorem_defect(d)?)),
    }
    Ok(out)
}

fn verify(
    inst: &Instance,
    theorem: Theorem,
    alpha: Option<Vec<Vertex>>,
    vertex: Option<Vertex>,
) -> Result<Outcome, Error> {
    let mut out = Outcome::new(Some(inst));
    match theorem {
        Theorem::Identity => match inst {
            Instance::Graph(g) => {
                let r = verify_graph_identity(g)?;
                out.put("holds", json!(r.holds));
                out.put("psi", binom_both(&r.psi));
                out.put("reflected_chromatic", monomial_both(&r.reflected_chromatic, g.order()));
                out.put("defect", r.defect.as_ref().map_or(Value::Null, defect_json));
                out.put("witnesses", serde_json::to_value(&r.witnesses).expect("serialisable"));
                out.put("relabelable", json!(gn_membership(g).ok().map(|w| w.omega)));
            }
            Instance::Digraph(d) => {
                let psi = psi_digraph(d);
                let omega = order_polynomial(&d.poset())?;
                out.put("holds", json!(psi.to_monomial() == omega));
                out.put("psi", binom_both(&psi));
                out.put("omega", monomial_both(&omega, d.order()));
                if d.order() >= 3 {
                    out.put("defect", defect_json(&theorem_defect(d)?));
                }
                out.put("witnesses", serde_json::to_value(digraph_witnesses(d)).expect("serialisable"));
            }
        },
        Theorem::Decomposition => {
            let g = need_graph(inst)?;
            let r = psi_decomposition_check(g)?;
            out.put("orientations", json!(r.orientations));
            out.put("extension_counts", json!(r.extension_counts));
            out.put("partition_exact", json!(r.partition_exact));
            out.put("psi_sum_holds", json!(r.psi_sum_holds));
            out.put("order_sum_holds", json!(r.order_sum_holds));
            out.put("strict_sum_holds", json!(r.strict_sum_holds));
            out.put("count_holds", json!(r.count_holds));
            if !r.holds() {
                out.findings.push(Finding::new("decomposition", "a decomposition identity fails", inst));
            }
        }
        Theorem::Reciprocity => {
            let d = need_digraph(inst)?;
            let r = reciprocity_check(&d.poset())?;
            out.put("holds", json!(r.holds));
            out.put("omega", monomial_both(&r.omega, d.order()));
            out.put("strict_omega", monomial_both(&r.omega_bar, d.order()));
            if !r.holds {
                out.findings.push(Finding::new("reciprocity", format!("disagrees at m = {:?}", r.mismatches), inst));
            }
        }
        Theorem::Gamma => {
            let d = need_digraph(inst)?;
            let alphas = match alpha {
                Some(a) => vec![Ordering::new(a)?],
                None => sink_elimination_orderings(d),
            };
            let defect = if d.order() >= 3 { Some(theorem_defect(d)?) } else { None };
            let mut runs = Vec::new();
            for alpha in alphas {
                let g = sink_elimination_sequence(d, &alpha)?;
                if let (Some(want), Some(got)) = (&defect, &g.endpoint_defect) {
                    if !want.same_polynomial(got) {
                        out.findings.push(Finding::new(
                            "gamma-defect",
                            format!("α = {alpha}: telescoped defect {got}, theorem defect {want}"),
                            inst,
                        ));
                    }
                }
                runs.push(json!({
                    "alpha": alpha.as_slice(),
                    "final": Instance::Digraph(g.digraphs.last().expect("nonempty").clone()).to_text(),
                    "quotients": g.steps.iter().map(|s| zpoly(&s.quotient)).collect::<Vec<_>>(),
                    "witness_counts": g.digraphs.iter().map(|x| digraph_witnesses(x).len()).collect::<Vec<_>>(),
                    "endpoint_defect": g.endpoint_defect.as_ref().map(defect_json),
                }));
            }
            out.put("defect", defect.as_ref().map_or(Value::Null, defect_json));
            out.put("sequences", Value::Array(runs));
        }
        Theorem::Turning => {
            let d = need_digraph(inst)?;
            let vertices = match vertex {
                Some(a) => vec![a],
                None => d.vertices().iter().copied().filter(|&a| turning_vertex(d, a).unwrap_or(false)).collect(),
            };
            let mut runs = Vec::new();
            for a in vertices {
                let r = delta_diff_turning(d, a)?;
                runs.push(json!({
                    "a": a,
                    "r": r.admissible.r,
                    "stretched": r.admissible.stretched,
                    "delta_diff": zpoly(&r.delta_diff),
                    "c": r.stats.c,
                    "c_prime": r.stats.c_prime,
                    "psi_diff": r.psi_diff.as_ref().map(binom_both),
                    "witnesses_through_a": r.witnesses_through_a,
                    "converse_holds": r.converse_holds,
                }));
            }
            out.put("turning", Value::Array(runs));
        }
    }
    Ok(out)
}

fn env_limit<T: std::str::FromStr>(name: &str, default: T) -> Result<T, Error> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::PreconditionViolated(format!("{name} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn limits() -> Result<Limits, Error> {
    let d = Limits::default();
    Ok(Limits {
        graphs: env_limit("ORDERPOLY_LIMIT_GRAPHS", d.graphs)?,
        digraphs: env_limit("ORDERPOLY_LIMIT_DIGRAPHS", d.digraphs)?,
        pool: env_limit("ORDERPOLY_LIMIT_POOL", d.pool)?,
        trees: env_limit("ORDERPOLY_LIMIT_TREES", d.trees)?,
    })
}

fn scan(class: ClassArg, order: usize, check: String, pool: Option<Vertex>) -> Result<Outcome, Error> {
    let limits = limits()?;
    let cfg = ScanConfig { class: class.into(), order, pool: pool.unwrap_or(limits.pool), check };
    let report = run_scan(&cfg, &limits)?;
    let mut out = Outcome::new(None);
    out.findings.extend(report.first_failure.clone());
    match serde_json::to_value(&report).expect("serialisable") {
        Value::Object(m) => out.results = m,
        _ => unreachable!("reports serialise to objects"),
    }
    Ok(out)
}

fn command_echo(cmd: &Command) -> Value {
    match cmd {
        Command::Compute { path, what } => {
            json!({ "verb": "compute", "path": path.display().to_string(), "what": what.to_possible_value().map(|v| v.get_name().to_string()) })
        }
        Command::Verify { path, theorem, alpha, vertex } => json!({
            "verb": "verify",
            "path": path.display().to_string(),
            "theorem": theorem.to_possible_value().map(|v| v.get_name().to_string()),
            "alpha": alpha,
            "vertex": vertex,
        }),
        Command::Scan { class, order, check, pool } => json!({
            "verb": "scan",
            "class": class.to_possible_value().map(|v| v.get_name().to_string()),
            "order": order,
            "check": check,
            "pool": pool,
        }),
    }
}

fn run(cli: Cli) -> Result<(Value, bool), (Value, Error)> {
    let start = Instant::now();
    let echo = command_echo(&cli.command);
    let result = match cli.command {
        Command::Compute { path, what } => load(&path).and_then(|inst| compute(&inst, what)),
        Command::Verify { path, theorem, alpha, vertex } => {
            load(&path).and_then(|inst| verify(&inst, theorem, alpha, vertex))
        }
        Command::Scan { class, order, check, pool } => scan(class, order, check, pool),
    };
    let elapsed = |mut report: Value| {
        if cli.timing {
            report["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
        }
        report
    };
    match result {
        Ok(out) => {
            let failed = !out.findings.is_empty();
            let report = json!({
                "command": echo,
                "instance": out.instance,
                "status": if failed { "finding" } else { "pass" },
                "results": Value::Object(out.results),
                "findings": out.findings,
            });
            Ok((elapsed(report), failed))
        }
        // a finding raised mid-computation is still a complete report
        Err(Error::Finding(f)) => {
            let report = json!({
                "command": echo,
                "instance": f.instance.clone(),
                "status": "finding",
                "results": {},
                "findings": [*f],
            });
            Ok((elapsed(report), true))
        }
        Err(e) => Err((echo, e)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("orderpoly: cannot configure {jobs} workers: {e}");
            return ExitCode::from(3);
        }
    }
    match run(cli) {
        Ok((report, failed)) => {
            println!("{report}");
            ExitCode::from(if failed { 1 } else { 0 })
        }
        Err((echo, e)) => {
            eprintln!("orderpoly: {e}");
            println!(
                "{}",
                json!({ "command": echo, "status": "error", "error": e.to_string(), "exit_code": e.exit_code() })
            );
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
