//! `rsps`: generate graphs, build and check colored path systems, run the
//! exact solver and print comparison tables.
//!
//! Exit codes: 0 success, 1 an invariant failed (invalid system, size over
//! its guarantee), 2 usage error or unsupported input, 3 search budget
//! exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rsps_core::basecase::{derive_all, derive_base, library, registry, BaseCaseLibrary, MANIFEST};
use rsps_core::construct::{construct, construct_tree, Construction};
use rsps_core::formulas::{closed_form, BoundQuery, Interval};
use rsps_core::graph::random_tree_parents;
use rsps_core::solver::{min_separator, SolveConfig};
use rsps_core::{gen_graph, separation_check, Error, Graph, GraphDoc, GraphSpec, Mode, Palette, PathSystem};

#[derive(Parser)]
#[command(name = "rsps", version, about = "Rainbow separating path systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph of a named class.
    Gen {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        #[arg(short, long)]
        o: Option<PathBuf>,
    },
    /// Build a k-colored separating system with the class construction.
    Construct {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: Palette,
        #[arg(short, long)]
        o: Option<PathBuf>,
    },
    /// Check a system against a graph.
    Validate {
        graph: PathBuf,
        system: PathBuf,
        #[arg(long, default_value = "rainbow")]
        mode: Mode,
    },
    /// Find a minimum system with the exact solver.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "rainbow")]
        mode: Mode,
        #[arg(long, default_value = "2")]
        k: Palette,
        /// Give up above this size.
        #[arg(long)]
        max_size: Option<usize>,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(short, long)]
        o: Option<PathBuf>,
    },
    /// Compare formulas, constructions and solver values over a range of sizes.
    Table {
        #[arg(long)]
        class: String,
        #[arg(long)]
        k: Palette,
        /// Inclusive range `a..b` of the size parameter.
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Solver budget per row in seconds.
        #[arg(long, default_value_t = 30.0)]
        budget: f64,
        /// Rows with more edges than this are not solved.
        #[arg(long, default_value_t = 7)]
        solve_max_edges: usize,
        /// Seed for random trees.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        o: Option<PathBuf>,
    },
    /// Write a graph, optionally with a system's colors, as Graphviz DOT.
    Export {
        graph: PathBuf,
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(short, long)]
        o: Option<PathBuf>,
    },
    /// Re-derive base cases with the solver, or check the current library.
    Derive {
        /// Case ids; all registered cases when empty.
        ids: Vec<String>,
        /// Library directory to update.
        #[arg(short, long)]
        o: Option<PathBuf>,
        /// Verify the library in use instead of deriving.
        #[arg(long)]
        verify: bool,
        /// List registered case ids.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Md,
}

#[derive(Args)]
struct ClassArgs {
    /// path, cycle, star, spider, complete, complete-binary-tree, tree, merged-binary
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    legs: Option<Vec<usize>>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Seed for random trees.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct InputArgs {
    /// Graph JSON file; otherwise the class flags describe the graph.
    #[arg(long, conflicts_with = "class")]
    graph: Option<PathBuf>,
    #[command(flatten)]
    class: ClassArgs,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::BudgetExhausted { .. }) => 3,
            Some(Error::ConstructionFailed(_)) => 1,
            _ => 2,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type Outcome = std::result::Result<u8, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, err: anyhow!(msg.into()) }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Gen { class, format, o } => cmd_gen(&class, format, o.as_deref()),
        Cmd::Construct { input, k, o } => cmd_construct(&input, k, o.as_deref()),
        Cmd::Validate { graph, system, mode } => cmd_validate(&graph, &system, mode),
        Cmd::Solve { input, mode, k, max_size, budget, o } => cmd_solve(&input, mode, k, max_size, budget, o.as_deref()),
        Cmd::Table { class, k, n, format, budget, solve_max_edges, seed, o } => {
            cmd_table(&class, k, n, format, budget, solve_max_edges, seed, o.as_deref())
        }
        Cmd::Export { graph, system, o } => cmd_export(&graph, system.as_deref(), o.as_deref()),
        Cmd::Derive { ids, o, verify, list } => cmd_derive(&ids, o.as_deref(), verify, list),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let a: usize = a.parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: usize = b.parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

fn spec_for(class: &str, n: Option<usize>, a: &ClassArgs) -> std::result::Result<GraphSpec, Failure> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("class {class} needs --{flag}")));
    Ok(match class {
        "path" => GraphSpec::Path { n: need(n, "n")? },
        "cycle" => GraphSpec::Cycle { n: need(n, "n")? },
        "star" => GraphSpec::Star { n: need(n, "n")? },
        "complete" => GraphSpec::Complete { n: need(n, "n")? },
        "spider" => GraphSpec::Spider { legs: a.legs.clone().ok_or_else(|| usage("class spider needs --legs"))? },
        "complete-binary-tree" | "binary" => GraphSpec::CompleteBinaryTree { depth: need(a.depth.or(n), "depth")? },
        "merged-binary" => GraphSpec::MergedBinary { t: need(a.t.or(n), "t")? },
        "tree" => GraphSpec::Tree { parents: random_tree_parents(need(n, "n")?, a.seed) },
        other => return Err(usage(format!("unknown class `{other}`"))),
    })
}

fn class_spec(a: &ClassArgs) -> std::result::Result<GraphSpec, Failure> {
    let class = a.class.as_deref().ok_or_else(|| usage("give --graph or --class"))?;
    spec_for(class, a.n, a)
}

fn read_graph(path: &Path) -> std::result::Result<(Graph, Option<GraphSpec>), Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: GraphDoc = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let g = Graph::from_doc(&doc)?;
    let spec = doc.meta.and_then(|m| serde_json::from_value::<GraphSpec>(m).ok());
    // a spec that disagrees with the edges is ignored
    let spec = spec.filter(|s| gen_graph(s).is_ok_and(|h| h == g));
    Ok((g, spec))
}

fn read_system(path: &Path) -> std::result::Result<PathSystem, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn load_input(input: &InputArgs) -> std::result::Result<(Graph, Option<GraphSpec>), Failure> {
    match &input.graph {
        Some(p) => read_graph(p),
        None => {
            let spec = class_spec(&input.class)?;
            Ok((gen_graph(&spec)?, Some(spec)))
        }
    }
}

/// Writes `text` to `out`, or to stdout.
fn emit(out: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> std::result::Result<String, Failure> {
    Ok(serde_json::to_string_pretty(v).map_err(anyhow::Error::from)? + "\n")
}

fn cmd_gen(class: &ClassArgs, format: GraphFormat, out: Option<&Path>) -> Outcome {
    let spec = class_spec(class)?;
    let g = gen_graph(&spec)?;
    let text = match format {
        GraphFormat::Json => to_json(&g.to_doc(Some(&spec)))?,
        GraphFormat::Dot => g.to_dot(),
    };
    emit(out, &text)?;
    Ok(0)
}

fn build(g: &Graph, spec: Option<&GraphSpec>, k: Palette) -> rsps_core::Result<Construction> {
    match spec {
        Some(s) => construct(s, k),
        None => match k {
            Palette::Finite(k) => construct_tree(g, k),
            Palette::Infinite => Err(Error::Unsupported("constructions need a finite palette".into())),
        },
    }
}

fn bounds(spec: Option<&GraphSpec>, k: Palette) -> Option<Interval> {
    spec.and_then(|s| closed_form(&BoundQuery::ck(s.clone(), k)).ok())
}

fn fmt_opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn cmd_construct(input: &InputArgs, k: Palette, out: Option<&Path>) -> Outcome {
    let (g, spec) = load_input(input)?;
    let c = build(&g, spec.as_ref(), k)?;
    let valid = separation_check(&c.graph, &c.system, Mode::Rainbow)?.ok;
    let size = c.system.len() as u64;
    let iv = bounds(spec.as_ref(), k);
    let class = spec.as_ref().map_or("graph", GraphSpec::class_name);
    let line = format!(
        "{class} {} {k} {size} {} {} {valid}",
        c.graph.n(),
        fmt_opt(iv.map(|i| i.lo)),
        fmt_opt(iv.and_then(|i| i.hi)),
    );
    let json = to_json(&c.system)?;
    match out {
        Some(p) => {
            emit(Some(p), &json)?;
            println!("{line}");
        }
        None => {
            print!("{json}");
            eprintln!("{line}");
        }
    }
    if !valid {
        eprintln!("error: constructed system does not separate");
        return Ok(1);
    }
    if size > c.guarantee {
        eprintln!("error: size {size} exceeds the guaranteed {}", c.guarantee);
        return Ok(1);
    }
    Ok(0)
}

fn cmd_validate(graph: &Path, system: &Path, mode: Mode) -> Outcome {
    let (g, _) = read_graph(graph)?;
    let s = read_system(system)?;
    let report = match separation_check(&g, &s, mode) {
        Ok(r) => r,
        Err(e @ (Error::PathNotInGraph { .. } | Error::ColorOutOfRange { .. })) => {
            println!("invalid: {e}");
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    if report.ok {
        println!("ok {mode} paths={} edges={}", s.len(), g.edge_count());
        return Ok(0);
    }
    println!("invalid {mode}: {} failing pairs", report.failures.len());
    for f in report.failures.iter().take(10) {
        println!("  e{} e{}: {:?}", f.e, f.f, f.reason);
    }
    Ok(1)
}

fn cmd_solve(
    input: &InputArgs,
    mode: Mode,
    k: Palette,
    max_size: Option<usize>,
    budget: Option<f64>,
    out: Option<&Path>,
) -> Outcome {
    let (g, _) = load_input(input)?;
    let mut cfg = SolveConfig::new(mode, k).with_budget(budget);
    cfg.max_size = max_size;
    let cert = match min_separator(&g, &cfg) {
        Ok(c) => c,
        Err(Error::BudgetExhausted { lower_bound }) => {
            println!("budget exhausted: size >= {lower_bound}");
            return Ok(3);
        }
        Err(Error::InfeasibleAtTarget(msg)) => {
            println!("{msg}");
            return Ok(3);
        }
        Err(e) => return Err(e.into()),
    };
    let json = to_json(&cert)?;
    let line = format!("size {} optimal {} nodes {}", cert.size, cert.optimal, cert.nodes);
    match out {
        Some(p) => {
            emit(Some(p), &json)?;
            println!("{line}");
        }
        None => {
            print!("{json}");
            eprintln!("{line}");
        }
    }
    Ok(if cert.optimal { 0 } else { 3 })
}

#[derive(Serialize)]
struct Row {
    class: String,
    params: String,
    k: String,
    formula_lo: Option<u64>,
    formula_hi: Option<u64>,
    constructed: Option<usize>,
    solved: Option<usize>,
    optimal: Option<bool>,
    valid: Option<bool>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_table(
    class: &str,
    k: Palette,
    (a, b): (usize, usize),
    format: TableFormat,
    budget: f64,
    solve_max_edges: usize,
    seed: u64,
    out: Option<&Path>,
) -> Outcome {
    if class == "spider" {
        return Err(usage("spider tables are not indexed by one size parameter"));
    }
    let args = ClassArgs { class: None, n: None, legs: None, depth: None, t: None, seed };
    let mut rows = Vec::new();
    for n in a..=b {
        let spec = spec_for(class, Some(n), &args)?;
        let g = match gen_graph(&spec) {
            Ok(g) => g,
            Err(Error::InvalidSpec(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        let iv = bounds(Some(&spec), k);
        let built = match construct(&spec, k) {
            Ok(c) => Some(c),
            Err(Error::Unsupported(_) | Error::InvalidSpec(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let valid = match &built {
            Some(c) => Some(separation_check(&c.graph, &c.system, Mode::Rainbow)?.ok && c.system.len() as u64 <= c.guarantee),
            None => None,
        };
        let (solved, optimal) = if g.edge_count() <= solve_max_edges {
            match min_separator(&g, &SolveConfig::new(Mode::Rainbow, k).with_budget(Some(budget))) {
                Ok(c) => (Some(c.size), Some(c.optimal)),
                Err(Error::BudgetExhausted { .. } | Error::CapExceeded { .. }) => (None, Some(false)),
                Err(e) => return Err(e.into()),
            }
        } else {
            (None, None)
        };
        rows.push(Row {
            class: spec.class_name().to_string(),
            params: spec.params_string(),
            k: k.to_string(),
            formula_lo: iv.map(|i| i.lo),
            formula_hi: iv.and_then(|i| i.hi),
            constructed: built.as_ref().map(|c| c.system.len()),
            solved,
            optimal,
            valid,
        });
    }
    let text = match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r).map_err(anyhow::Error::from)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?).map_err(anyhow::Error::from)?
        }
        TableFormat::Md => markdown(&rows),
    };
    emit(out, &text)?;
    Ok(if rows.iter().all(|r| r.valid != Some(false)) { 0 } else { 1 })
}

fn markdown(rows: &[Row]) -> String {
    let cell = |v: Option<String>| v.unwrap_or_default();
    let mut s = String::from(
        "| class | params | k | formula_lo | formula_hi | constructed | solved | optimal | valid |\n\
         |---|---|---|---|---|---|---|---|---|\n",
    );
    for r in rows {
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.class,
            r.params,
            r.k,
            cell(r.formula_lo.map(|v| v.to_string())),
            cell(r.formula_hi.map(|v| v.to_string())),
            cell(r.constructed.map(|v| v.to_string())),
            cell(r.solved.map(|v| v.to_string())),
            cell(r.optimal.map(|v| v.to_string())),
            cell(r.valid.map(|v| v.to_string())),
        ));
    }
    s
}

fn cmd_export(graph: &Path, system: Option<&Path>, out: Option<&Path>) -> Outcome {
    let (g, _) = read_graph(graph)?;
    let colors = match system {
        Some(p) => Some(read_system(p)?.edge_colors(&g)?),
        None => None,
    };
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        s.push_str(&format!("  {v};\n"));
    }
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let label = match &colors {
            Some(cs) => {
                let parts: Vec<String> = cs[i].iter().map(u32::to_string).collect();
                format!("e{i}: {}", parts.join(","))
            }
            None => format!("e{i}"),
        };
        s.push_str(&format!("  {u} -- {v} [label=\"{label}\"];\n"));
    }
    s.push_str("}\n");
    emit(out, &s)?;
    Ok(0)
}

fn cmd_derive(ids: &[String], out: Option<&Path>, verify: bool, list: bool) -> Outcome {
    if list {
        for c in registry() {
            println!("{} k={} size={} edges={}", c.id, c.k, c.size, c.graph.edge_count());
        }
        return Ok(0);
    }
    if verify {
        let lib = library()?;
        return Ok(match lib.verify_all() {
            Ok(()) => {
                println!("ok: {} cases", lib.len());
                0
            }
            Err(e) => {
                println!("invalid: {e}");
                1
            }
        });
    }
    let dir = out.ok_or_else(|| usage("derive needs -o <dir>"))?;
    let lib = if ids.is_empty() {
        derive_all(|id, secs| eprintln!("{id}: {secs:.2}s"))?
    } else {
        let mut lib = if dir.join(MANIFEST).exists() { BaseCaseLibrary::load_dir(dir)? } else { BaseCaseLibrary::default() };
        for id in ids {
            lib.insert(derive_base(id)?);
            eprintln!("{id}: done");
        }
        lib
    };
    lib.write_dir(dir)?;
    println!("wrote {} cases to {}", lib.len(), dir.display());
    Ok(0)
}
