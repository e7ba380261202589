use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use loosecycle::certificate::{check_certificate, Certificate};
use loosecycle::constructions::{self, threshold};
use loosecycle::extremal::solve_extremal;
use loosecycle::format::{parse_3g, to_3g_string};
use loosecycle::harness::{exhaustive_n6_scan, run_campaign, ExperimentConfig, HarnessError};
use loosecycle::loose::{check_hamilton_cycle, LooseCycle};
use loosecycle::params::{Parameters, DEFAULT_BETA};
use loosecycle::search::{find_loose_hamilton_cycle, SearchOptions};
use loosecycle::tiling::{analyze_tiling, exact_max_y_tiling, greedy_max_y_tiling};
use loosecycle::ThreeGraph;

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const IO: u8 = 3;

#[derive(Parser)]
#[command(name = "loosecycle", version, about = "Loose Hamilton cycles in 3-uniform hypergraphs")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Search node budget.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Independent-set construction, n ≡ 2 (mod 4).
    H1,
    /// Pair-cover construction, 4 | n.
    H2,
    /// H1 or H2 by residue.
    Extremal,
    /// H1 with one more vertex on the dense side.
    H1Plus,
    /// Binomial random 3-graph.
    Random,
    /// Planted sparse set of size ⌊3n/4⌋.
    RandomExtremal,
    Complete,
    Fano,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph in .3g format.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Triple probability for `random`.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_BETA)]
        beta: f64,
    },
    /// Decide loose Hamiltonicity by search.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        /// Skip the barrier-certificate pass.
        #[arg(long)]
        no_certificates: bool,
    },
    /// Run the constructive solver for near-extremal graphs.
    SolveExtremal {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BETA)]
        beta: f64,
        #[arg(long)]
        eps1: Option<f64>,
    },
    /// Build a Y-tiling and report its structure.
    Tile {
        #[arg(long = "in")]
        input: PathBuf,
        /// Use branch and bound instead of the greedy tiling.
        #[arg(long)]
        exact: bool,
    },
    /// Check a cycle or barrier certificate against a graph.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// JSON file: a cycle, a certificate, or the output of `solve` / `solve-extremal`.
        #[arg(long)]
        witness: PathBuf,
    },
    /// Run an experiment campaign from a TOML config.
    Campaign {
        #[arg(long)]
        config: PathBuf,
    },
    /// Scan all 2^20 graphs on six vertices.
    ScanN6,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(IO)
        }
    }
}

fn read_graph(path: &Path) -> Result<ThreeGraph, Failure> {
    parse_3g(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, v: &Value) -> Result<(), Failure> {
    emit(out, &serde_json::to_string_pretty(v).expect("json values serialize"))
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let out = cli.out.as_deref();
    match &cli.cmd {
        Cmd::Gen { family, n, p, beta } => {
            let (h, note) = generate(*family, *n, *p, *beta, cli.seed)?;
            emit(out, to_3g_string(&h, &[note]).trim_end())?;
            Ok(OK)
        }
        Cmd::Solve { input, no_certificates } => {
            let h = read_graph(input)?;
            let mut opts = SearchOptions {
                use_certificates: !no_certificates,
                ..SearchOptions::default()
            };
            if let Some(b) = cli.budget {
                opts.node_budget = b;
            }
            let outcome = find_loose_hamilton_cycle(&h, &opts).map_err(usage)?;
            emit_json(out, &serde_json::to_value(&outcome).expect("outcome serializes"))?;
            Ok(if outcome.is_found() { OK } else { NEGATIVE })
        }
        Cmd::SolveExtremal { input, beta, eps1 } => {
            let h = read_graph(input)?;
            let mut params = Parameters::from_beta(*beta).with_seed(cli.seed);
            if let Some(e) = eps1 {
                params = params.with_eps1(*e);
            }
            if let Some(b) = cli.budget {
                params.search_node_budget = b;
            }
            params.validate().map_err(usage)?;
            let report = solve_extremal(&h, &params);
            emit_json(out, &serde_json::to_value(&report).expect("report serializes"))?;
            Ok(if report.is_found() { OK } else { NEGATIVE })
        }
        Cmd::Tile { input, exact } => {
            let h = read_graph(input)?;
            let (tiling, optimal) = if *exact {
                let e = exact_max_y_tiling(&h, cli.budget.unwrap_or(20_000_000));
                (e.tiling, Some(e.optimal))
            } else {
                (greedy_max_y_tiling(&h, cli.seed), None)
            };
            let analysis = analyze_tiling(&h, &tiling, &Parameters::default().with_seed(cli.seed)).map_err(usage)?;
            let v = json!({
                "size": tiling.len(),
                "uncovered": analysis.uncovered.len(),
                "optimal": optimal,
                "analysis": analysis,
            });
            emit_json(out, &v)?;
            Ok(OK)
        }
        Cmd::Verify { input, witness } => {
            let h = read_graph(input)?;
            let text = fs::read_to_string(witness).map_err(|e| Failure::Io(format!("{}: {e}", witness.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Io(format!("{}: {e}", witness.display())))?;
            let (valid, what, reason) = verify_witness(&h, &v)?;
            emit_json(out, &json!({ "witness": what, "valid": valid, "reason": reason }))?;
            Ok(if valid { OK } else { NEGATIVE })
        }
        Cmd::Campaign { config } => {
            let mut cfg = ExperimentConfig::from_path(config).map_err(|e| match e {
                HarnessError::Io(e) => Failure::Io(format!("{}: {e}", config.display())),
                other => usage(other),
            })?;
            if cli.out.is_some() {
                cfg.output = cli.out.clone();
            }
            if cli.threads.is_some() {
                cfg.threads = cli.threads;
            }
            if let Some(b) = cli.budget {
                cfg.node_budget = b;
            }
            let records = run_campaign(&cfg).map_err(|e| match e {
                HarnessError::Io(e) => Failure::Io(e.to_string()),
                other => usage(other),
            })?;
            if cfg.output.is_none() {
                for r in &records {
                    println!("{}", r.to_json_line());
                }
            }
            let verified = records.iter().filter(|r| r.verified).count();
            eprintln!("{} records, {} verified", records.len(), verified);
            Ok(OK)
        }
        Cmd::ScanN6 => {
            let report = exhaustive_n6_scan();
            emit_json(out, &serde_json::to_value(&report).expect("report serializes"))?;
            Ok(if report.disagreements == 0 { OK } else { NEGATIVE })
        }
    }
}

fn generate(family: FamilyArg, n: usize, p: f64, beta: f64, seed: u64) -> Result<(ThreeGraph, String), Failure> {
    let labeled = |r: Result<constructions::LabeledPartitionGraph, constructions::ConstructionError>| {
        r.map(|g| g.graph).map_err(usage)
    };
    let h = match family {
        FamilyArg::H1 => labeled(constructions::build_h1(n))?,
        FamilyArg::H2 => labeled(constructions::build_h2(n))?,
        FamilyArg::Extremal => labeled(constructions::build_extremal_example(n))?,
        FamilyArg::H1Plus => labeled(constructions::build_h1_plus(n))?,
        FamilyArg::RandomExtremal => labeled(constructions::random_extremal(n, beta, seed))?,
        FamilyArg::Random => constructions::random_graph(n, p, seed).map_err(usage)?,
        FamilyArg::Complete if n >= 3 => ThreeGraph::complete(n),
        FamilyArg::Complete => return Err(Failure::Usage(format!("complete graph needs n >= 3, got {n}"))),
        FamilyArg::Fano => constructions::fano_plane(),
    };
    let mut note = format!("min degree {}", h.min_vertex_degree());
    if let Ok(t) = threshold(h.n()) {
        note.push_str(&format!(", threshold {t}"));
    }
    Ok((h, note))
}

/// Finds a cycle or certificate inside `v`, accepting the bare objects and
/// the outputs of `solve` and `solve-extremal`.
fn verify_witness(h: &ThreeGraph, v: &Value) -> Result<(bool, &'static str, Option<String>), Failure> {
    let candidates = [
        Some(v),
        v.pointer("/result/detail"),
        v.pointer("/outcome/cycle"),
    ];
    for c in candidates.into_iter().flatten() {
        if c.get("seq").is_some() {
            let cycle: LooseCycle = serde_json::from_value(c.clone()).map_err(usage)?;
            return Ok(match check_hamilton_cycle(h, &cycle.seq) {
                Ok(()) => (true, "cycle", None),
                Err(e) => (false, "cycle", Some(e.to_string())),
            });
        }
        if c.get("kind").is_some() {
            let cert: Certificate = serde_json::from_value(c.clone()).map_err(usage)?;
            return Ok(match check_certificate(h, &cert) {
                Ok(true) => (true, "certificate", None),
                Ok(false) => (false, "certificate", Some("barrier does not hold".into())),
                Err(e) => (false, "certificate", Some(e.to_string())),
            });
        }
    }
    Err(Failure::Usage("witness holds neither a cycle nor a certificate".into()))
}
