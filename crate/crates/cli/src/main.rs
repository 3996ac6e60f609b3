//! `cliquebound`: clique counts, clusters and exhaustive verification from
//! the command line.
//!
//! Exit status is 0 when a run finds no violations, 1 when it does, and 2
//! for usage errors or inputs that fail an operation's preconditions.

mod render;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cliquebound::cluster::ClusterSummary;
use cliquebound::verify::{self, VerifyReport};
use cliquebound::{
    clique_count_vector, count_cliques_of_size, discharge_audit, enumerate_graphs, find_clusters,
    fold_certified, is_foldable, mu, read_graph6_lines, reduce, triple_census, write_graph6, Error,
    Graph, SearchSpace,
};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "cliquebound",
    version,
    about = "Clique counting and extremal verification for graphs of bounded maximum degree"
)]
struct RunConfig {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for the exhaustive searches.
    #[arg(long, global = true, env = "CLIQUEBOUND_WORKERS")]
    workers: Option<usize>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// graph6 file, one graph per line; standard input when omitted.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    /// Also write witness graphs as graph6 lines to this file.
    #[arg(long)]
    witnesses: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// κ_t, κ, μ and the 3-vertex census of each input graph.
    Count {
        #[command(flatten)]
        input: InputArgs,
        /// Report κ_t for this clique size as well.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Clusters of each input graph with their predicates and the
    /// discharging totals.
    Clusters {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        r: usize,
    },
    /// Fold one cluster of each input graph and print the certificate.
    Fold {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        r: usize,
        /// Fold the cluster whose clique contains this vertex. Defaults to
        /// the first foldable cluster with a nonempty shell.
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Fold until no foldable cluster remains and peel complete components.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        r: usize,
    },
    /// List one graph per isomorphism class as graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Maximum degree.
        #[arg(long)]
        r: Option<usize>,
        /// Edge count.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        min_degree: Option<usize>,
    },
    /// Largest κ_t over Δ ≤ r graphs against aK_{r+1} ∪ K_b.
    VerifyGls {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[command(flatten)]
        witnesses: WitnessArgs,
    },
    /// Largest κ over Δ ≤ r graphs with the full maximizer set.
    VerifyTotal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        witnesses: WitnessArgs,
    },
    /// Lex graphs maximize μ for every edge count.
    VerifyLexMu {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        witnesses: WitnessArgs,
    },
    /// Star plus matching maximizes μ among graphs without isolated vertices.
    VerifyStarMatching {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        witnesses: WitnessArgs,
    },
    /// Every cluster with a nonempty shell is foldable or dischargeable.
    VerifyDichotomy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        witnesses: WitnessArgs,
    },
    /// Exact sweep of the average-weight inequality for r up to `--r`.
    VerifyAvgwt {
        #[arg(long, default_value_t = 12)]
        r: usize,
    },
    /// Exact sweep of the finite calculation for one r.
    VerifyFiniteCalc {
        #[arg(long)]
        r: usize,
    },
    /// The full reduction chain on every Δ ≤ r graph.
    VerifyPipeline {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        witnesses: WitnessArgs,
    },
}

/// How a run ends: its exit code and a message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::InvariantViolation(_)) {
            1
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read_input(input: &InputArgs) -> Result<Vec<Graph>, Failure> {
    let graphs = match &input.input {
        Some(path) => {
            let file = File::open(path)
                .map_err(|e| usage(format!("cannot open {}: {e}", path.display())))?;
            read_graph6_lines(BufReader::new(file))?
        }
        None => read_graph6_lines(io::stdin().lock())?,
    };
    Ok(graphs)
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), Failure> {
    match &cfg.out {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => {
            let mut stdout = io::stdout().lock();
            match writeln!(stdout, "{text}").and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn emit_json(cfg: &RunConfig, value: &Value) -> Result<(), Failure> {
    let text = if cfg.pretty {
        render::value(value)
    } else {
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    };
    emit(cfg, &text)
}

fn write_witnesses(path: &Path, report: &VerifyReport) -> Result<(), Failure> {
    let mut out = BufWriter::new(File::create(path)?);
    for g6 in report.witnesses.iter().filter_map(|w| w.graph6.as_deref()) {
        writeln!(out, "{g6}")?;
    }
    out.flush()?;
    Ok(())
}

fn finish_report(
    cfg: &RunConfig,
    report: VerifyReport,
    witnesses: Option<&WitnessArgs>,
) -> Result<bool, Failure> {
    if let Some(path) = witnesses.and_then(|w| w.witnesses.as_deref()) {
        write_witnesses(path, &report)?;
    }
    let text = if cfg.pretty {
        render::report(&report)
    } else {
        serde_json::to_string_pretty(&report).expect("reports serialize")
    };
    emit(cfg, &text)?;
    Ok(report.passed())
}

fn count(g: &Graph, t: Option<usize>) -> Result<Value, Failure> {
    let census = triple_census(g);
    let vector = clique_count_vector(g);
    let mut out = json!({
        "graph6": write_graph6(g),
        "n": g.n(),
        "edges": g.edge_count(),
        "max_degree": g.max_degree(),
        "clique_counts": vector.counts,
        "total_cliques": vector.total(),
        "mu": mu(g),
        "census": census,
    });
    if let Some(t) = t {
        if t == 0 {
            return Err(usage("--t must be at least 1"));
        }
        out["t"] = json!(t);
        out["count"] = json!(count_cliques_of_size(g, t));
    }
    Ok(out)
}

fn clusters(g: &Graph, r: usize) -> Result<Value, Failure> {
    let found = find_clusters(g, r)?;
    let summaries: Vec<ClusterSummary> = found.iter().map(|c| c.summary()).collect();
    Ok(json!({
        "graph6": write_graph6(g),
        "r": r,
        "clusters": summaries,
        "discharge": discharge_audit(g, r)?,
    }))
}

fn fold_one(g: &Graph, r: usize, vertex: Option<usize>) -> Result<(Value, bool), Failure> {
    let found = find_clusters(g, r)?;
    let chosen = match vertex {
        Some(v) => found
            .iter()
            .find(|c| c.clique() >> v & 1 == 1)
            .ok_or_else(|| {
                usage(format!(
                    "vertex {v} lies in no cluster of {}",
                    write_graph6(g)
                ))
            })?,
        None => found
            .iter()
            .find(|c| !c.is_complete_component() && is_foldable(c))
            .ok_or_else(|| usage(format!("{} has no foldable cluster", write_graph6(g))))?,
    };
    if chosen.is_complete_component() {
        return Err(usage("the chosen cluster is already a complete component"));
    }
    let (folded, cert) = fold_certified(g, chosen)?;
    let ok = cert.holds();
    Ok((
        json!({
            "graph6": write_graph6(g),
            "folded": write_graph6(&folded),
            "certificate": cert,
            "gain": cert.gain(),
            "gain_bound": cert.gain_bound(),
            "holds": ok,
        }),
        ok,
    ))
}

fn reduce_one(g: &Graph, r: usize) -> Result<(Value, bool), Failure> {
    match reduce(g, r) {
        Ok(red) => {
            let mut out = serde_json::to_value(&red).expect("reductions serialize");
            out["graph6"] = json!(write_graph6(g));
            out["remainder"] = json!(write_graph6(&red.remainder));
            Ok((out, true))
        }
        Err(Error::InvariantViolation(msg)) => Ok((
            json!({ "graph6": write_graph6(g), "violation": msg }),
            false,
        )),
        Err(e) => Err(e.into()),
    }
}

fn run(cfg: &RunConfig) -> Result<bool, Failure> {
    match &cfg.command {
        Command::Count { input, t } => {
            let results = read_input(input)?
                .iter()
                .map(|g| count(g, *t))
                .collect::<Result<Vec<_>, _>>()?;
            emit_json(cfg, &json!({ "results": results }))?;
            Ok(true)
        }
        Command::Clusters { input, r } => {
            let results = read_input(input)?
                .iter()
                .map(|g| clusters(g, *r))
                .collect::<Result<Vec<_>, _>>()?;
            emit_json(cfg, &json!({ "results": results }))?;
            Ok(true)
        }
        Command::Fold { input, r, vertex } => {
            let mut results = Vec::new();
            let mut all_ok = true;
            for g in read_input(input)? {
                let (value, ok) = fold_one(&g, *r, *vertex)?;
                all_ok &= ok;
                results.push(value);
            }
            emit_json(cfg, &json!({ "results": results }))?;
            Ok(all_ok)
        }
        Command::Reduce { input, r } => {
            let mut results = Vec::new();
            let mut all_ok = true;
            for g in read_input(input)? {
                let (value, ok) = reduce_one(&g, *r)?;
                all_ok &= ok;
                results.push(value);
            }
            emit_json(cfg, &json!({ "results": results }))?;
            Ok(all_ok)
        }
        Command::Enumerate {
            n,
            r,
            m,
            min_degree,
        } => {
            let mut space = SearchSpace::all(*n);
            space.max_degree = *r;
            space.edge_count = *m;
            space.min_degree = *min_degree;
            let graphs = enumerate_graphs(&space)?;
            let lines: Vec<String> = graphs.iter().map(write_graph6).collect();
            emit(cfg, &lines.join("\n"))?;
            eprintln!("{} classes", graphs.len());
            Ok(true)
        }
        Command::VerifyGls { n, r, t, witnesses } => finish_report(
            cfg,
            verify::extremal_clique_search(*n, *r, *t)?,
            Some(witnesses),
        ),
        Command::VerifyTotal { n, r, witnesses } => finish_report(
            cfg,
            verify::extremal_total_clique_search(*n, *r)?,
            Some(witnesses),
        ),
        Command::VerifyLexMu { n, witnesses } => {
            finish_report(cfg, verify::verify_lex_mu(*n)?, Some(witnesses))
        }
        Command::VerifyStarMatching { n, witnesses } => {
            finish_report(cfg, verify::verify_star_matching(*n)?, Some(witnesses))
        }
        Command::VerifyDichotomy { n, r, witnesses } => finish_report(
            cfg,
            verify::verify_cluster_dichotomy(*n, *r)?,
            Some(witnesses),
        ),
        Command::VerifyAvgwt { r } => finish_report(cfg, verify::verify_avgwt_lemma(*r)?, None),
        Command::VerifyFiniteCalc { r } => {
            finish_report(cfg, verify::verify_finite_calculation(*r)?, None)
        }
        Command::VerifyPipeline { n, r, witnesses } => {
            finish_report(cfg, verify::verify_main_pipeline(*n, *r)?, Some(witnesses))
        }
    }
}

fn configure_workers(workers: Option<usize>) -> Result<(), Failure> {
    let Some(w) = workers else {
        return Ok(());
    };
    if w == 0 {
        return Err(usage("--workers must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(w)
        .build_global()
        .map_err(|e| usage(format!("cannot start {w} workers: {e}")))
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let outcome = configure_workers(cfg.workers).and_then(|()| run(&cfg));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("cliquebound: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
