use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rigikit_core::decide::{Certificate, DecideOptions};
use rigikit_core::{
    are_congruent, are_equivalent, bounded_components, conditions_report, decide_sparse, decide_with, parse_graph,
    random_minimally_rigid, realize_from_slopes, reduce_fully, Framework, MatroidView, MixedGraph, Settings,
    SlopeProblem,
};

mod selftest;

const EXIT_YES: u8 = 0;
const EXIT_INTERNAL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rigikit",
    version,
    about = "Global rigidity of generic direction-length frameworks"
)]
struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Independent trials for the generic rank (the maximum is taken).
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Every condition, the rigidity matroid and the bounded decomposition.
    Analyze { graph: PathBuf },
    /// Decide global rigidity and print the certificate.
    Decide {
        graph: PathBuf,
        /// Send rigid graphs with one length edge through the reduction too.
        #[arg(long)]
        no_fast_path: bool,
        /// Use the characterisation for graphs with at most 2|V| - 1 edges.
        #[arg(long)]
        sparse: bool,
    },
    /// Reduce by direction-edge deletions and block contractions.
    Reduce { graph: PathBuf },
    /// Realise a slope problem exactly.
    Realize { problem: PathBuf },
    /// Compare two frameworks of the same graph.
    Compare {
        graph: PathBuf,
        first: PathBuf,
        second: PathBuf,
    },
    /// Print a random minimally rigid graph.
    Gen {
        /// Number of vertices.
        n: usize,
        /// Number of length edges.
        #[arg(long, default_value_t = 1)]
        length_edges: usize,
    },
    /// Check the fast algorithms against brute-force oracles.
    Selftest {
        /// Random graphs on five to seven vertices to include.
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(kind: &'static str, message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind,
            message: message.to_string(),
        }
    }

    fn internal(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            kind: "internal",
            message: message.to_string(),
        }
    }
}

/// Report plus exit code of a successful run.
struct Report {
    json: Value,
    text: String,
    code: u8,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            code: EXIT_YES,
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::input("io", format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load_graph(path: &Path) -> Result<MixedGraph, Failure> {
    parse_graph(&read_input(path)?).map_err(|e| Failure::input("schema", format!("{}: {e}", path.display())))
}

fn analyze(g: &MixedGraph, s: &Settings) -> Report {
    let report = conditions_report(g, s);
    let view = MatroidView::new(g, s);
    let dec = bounded_components(g, s);
    let refs = |ids: &[usize]| -> Vec<String> { g.edge_refs(ids).iter().map(ToString::to_string).collect() };
    let circuits: serde_json::Map<String, Value> = view
        .fundamental_circuits()
        .iter()
        .map(|(&e, c)| (g.edge_ref(e).to_string(), json!(refs(c))))
        .collect();
    let components: Vec<Vec<String>> = view.components().iter().map(|c| refs(c)).collect();
    let json = json!({
        "graph_hash": g.canonical_hash(),
        "conditions": report,
        "matroid": {
            "rank": view.rank(),
            "basis": refs(view.basis()),
            "fundamental_circuits": circuits,
            "components": components,
        },
        "bounded": dec.to_value(g),
    });

    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!(
        "vertices {}, direction edges {}, length edges {}\n",
        report.vertices, report.direction_edges, report.length_edges
    );
    text += &format!(
        "rank {} (rigid needs {})\n",
        report.rank,
        (2 * report.vertices).saturating_sub(2)
    );
    for (name, value) in [
        ("rigid", report.rigid),
        ("redundantly rigid", report.redundantly_rigid),
        ("2-connected", report.two_connected),
        ("direction-balanced", report.direction_balanced),
        ("M-connected", report.m_connected),
        ("directions independent", report.direction_independent),
        ("bounded", report.bounded),
    ] {
        text += &format!("{name}: {}\n", yes_no(value));
    }
    text += &format!("M-components: {}\n", components.len());
    for c in &components {
        text += &format!("  {}\n", c.join(" "));
    }
    text += "bounded blocks:\n";
    for b in dec.named(g) {
        text += &format!("  {{{}}}\n", b.join(","));
    }
    Report::ok(json, text)
}

fn decide(g: &MixedGraph, s: &Settings, no_fast_path: bool, sparse: bool) -> Result<Report, Failure> {
    if sparse {
        let v = decide_sparse(g, s).map_err(|e| Failure::input("precondition", e))?;
        let code = if v.answer.is_yes() { EXIT_YES } else { EXIT_NO };
        let text = format!("{}: {}\n", if v.answer.is_yes() { "YES" } else { "NO" }, v.reason);
        let json = serde_json::to_value(&v).map_err(Failure::internal)?;
        return Ok(Report { json, text, code });
    }
    let options = DecideOptions {
        settings: *s,
        use_single_length_fast_path: !no_fast_path,
    };
    let v = decide_with(g, &options);
    rigikit_core::verify(g, &v, s).map_err(|e| Failure::internal(format!("certificate does not verify: {e}")))?;
    let code = if v.answer.is_yes() { EXIT_YES } else { EXIT_NO };
    let mut text = format!(
        "{} ({})\n  {}\n  {}\n",
        if v.answer.is_yes() { "YES" } else { "NO" },
        v.certificate.kind(),
        v.certificate.explain(),
        v.note()
    );
    if let Some(t) = &v.trace {
        text += &format!(
            "  reduction: {} steps, result {}\n",
            t.steps.len(),
            t.result.canonical_hash()
        );
    }
    if let Certificate::IrreducibleAllConditions { reduced_hash, .. } = &v.certificate {
        text += &format!("  reduced graph {reduced_hash}\n");
    }
    Ok(Report {
        json: v.to_value(),
        text,
        code,
    })
}

fn reduce(g: &MixedGraph, s: &Settings) -> Report {
    let trace = reduce_fully(g, s);
    let mut text = format!("input {}\n", trace.input_hash);
    for (i, step) in trace.steps.iter().enumerate() {
        let line = match serde_json::to_value(&step.step) {
            Ok(v) => v.to_string(),
            Err(e) => e.to_string(),
        };
        text += &format!("{:>3}. {line}\n", i + 1);
    }
    text += &format!(
        "result {} on {} vertices{}\n",
        trace.result.canonical_hash(),
        trace.result.vertex_count(),
        if trace.partial {
            " (not rigid: direction-edge deletions only)"
        } else {
            ""
        }
    );
    text += &trace.result.to_json();
    text.push('\n');
    Report::ok(trace.to_value(), text)
}

fn realize(path: &Path, seed: u64) -> Result<Report, Failure> {
    let problem = SlopeProblem::from_json(&read_input(path)?).map_err(|e| Failure::input("schema", e))?;
    let r = realize_from_slopes(&problem, seed).map_err(|e| Failure::input("precondition", e))?;
    let json = r.to_json();
    let text = match &r.framework {
        Some(fw) => {
            let mut t = String::from("exact realisation:\n");
            for (v, p) in fw.graph.vertices().iter().zip(&fw.coords) {
                t += &format!("  {v} = ({}, {})\n", p[0], p[1]);
            }
            t
        }
        None => {
            let mut t = format!("realisation = sqrt({}) * base:\n", r.scale_squared);
            for (v, p) in r.base.graph.vertices().iter().zip(&r.base.coords) {
                t += &format!("  {v} = ({}, {})\n", p[0], p[1]);
            }
            t
        }
    };
    Ok(Report::ok(json, text))
}

fn compare(graph: &Path, first: &Path, second: &Path) -> Result<Report, Failure> {
    let g = load_graph(graph)?;
    let load = |p: &Path| -> Result<Framework, Failure> {
        Framework::from_json(&g, &read_input(p)?).map_err(|e| Failure::input("schema", format!("{}: {e}", p.display())))
    };
    let (p, q) = (load(first)?, load(second)?);
    let equivalent = are_equivalent(&g, &p, &q);
    let congruent = are_congruent(&p, &q);
    let json = json!({ "equivalent": equivalent, "congruent": congruent });
    let text = format!("equivalent: {equivalent}\ncongruent: {congruent}\n");
    Ok(Report::ok(json, text))
}

fn gen(n: usize, length_edges: usize, seed: u64) -> Result<Report, Failure> {
    let g = random_minimally_rigid(n, seed, length_edges).map_err(|e| Failure::input("precondition", e))?;
    let text = g.to_json() + "\n";
    Ok(Report::ok(g.to_value(), text))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let s = Settings {
        seed: cli.seed,
        trials: cli.trials.max(1),
    };
    match &cli.command {
        Command::Analyze { graph } => Ok(analyze(&load_graph(graph)?, &s)),
        Command::Decide {
            graph,
            no_fast_path,
            sparse,
        } => decide(&load_graph(graph)?, &s, *no_fast_path, *sparse),
        Command::Reduce { graph } => Ok(reduce(&load_graph(graph)?, &s)),
        Command::Realize { problem } => realize(problem, cli.seed),
        Command::Compare { graph, first, second } => compare(graph, first, second),
        Command::Gen { n, length_edges } => gen(*n, *length_edges, cli.seed),
        Command::Selftest { count } => Ok(selftest::run(&s, *count)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(&cli) {
        Ok(report) => {
            let written = match cli.format {
                Format::Json => {
                    let text = serde_json::to_string_pretty(&report.json).expect("values serialise");
                    writeln!(out, "{text}")
                }
                Format::Text => write!(out, "{}", report.text),
            };
            if written.is_err() {
                return ExitCode::from(EXIT_INTERNAL);
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            let mut err = io::stderr().lock();
            let _ = match cli.format {
                Format::Json => {
                    let doc = json!({ "error": { "kind": f.kind, "message": f.message } });
                    writeln!(err, "{}", serde_json::to_string_pretty(&doc).expect("values serialise"))
                }
                Format::Text => writeln!(err, "error ({}): {}", f.kind, f.message),
            };
            ExitCode::from(f.code)
        }
    }
}
