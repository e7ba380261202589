//! Seeded experiment campaigns with JSONL output, and the exhaustive scan of
//! all 3-graphs on six vertices.

mod scan;

use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{build_extremal_example, build_h1_plus, random_extremal, random_graph, threshold};
use crate::extremal::{solve_extremal, ExtremalOutcome};
use crate::hypergraph::ThreeGraph;
use crate::loose::verify_loose_hamilton_cycle;
use crate::params::{Parameters, DEFAULT_BETA};
use crate::search::{find_loose_hamilton_cycle, SearchOptions, SearchResult};
use crate::tiling::{exact_max_y_tiling, greedy_max_y_tiling};

pub use scan::{exhaustive_n6_scan, n6_scan_range, loose_cycle_masks_n6, n6_graph, DegreeBucket, N6ScanReport, N6_TRIPLES};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("config syntax: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignKind {
    /// Degrees and refutation of the extremal examples.
    ThresholdCheck,
    /// Greedy plus augmented Y-tilings of random graphs.
    DichotomyProbe,
    /// The extremal-case solver on a chosen family.
    ExtremalSuite,
    /// Greedy tiling against the exact maximum on small random graphs.
    TilingBench,
}

impl CampaignKind {
    fn needs_even(self) -> bool {
        matches!(self, Self::ThresholdCheck | Self::ExtremalSuite)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    H1Plus,
    RandomExtremal,
}

/// Either an explicit list or an inclusive range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NSpec {
    List(Vec<usize>),
    Range {
        min: usize,
        max: usize,
        #[serde(default = "two")]
        step: usize,
    },
}

fn two() -> usize {
    2
}

impl NSpec {
    pub fn values(&self) -> Vec<usize> {
        match self {
            NSpec::List(v) => v.clone(),
            NSpec::Range { min, max, step } => (*min..=*max).step_by((*step).max(1)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    List(Vec<u64>),
    Range { start: u64, count: u64 },
}

impl SeedSpec {
    pub fn values(&self) -> Vec<u64> {
        match self {
            SeedSpec::List(v) => v.clone(),
            SeedSpec::Range { start, count } => (*start..*start + *count).collect(),
        }
    }
}

fn default_seeds() -> SeedSpec {
    SeedSpec::List(vec![0])
}

fn default_edge_prob() -> f64 {
    0.55
}

fn default_beta() -> f64 {
    DEFAULT_BETA
}

fn default_budget() -> u64 {
    20_000_000
}

fn default_refute_max() -> usize {
    12
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub campaign: CampaignKind,
    pub n: NSpec,
    #[serde(default = "default_seeds")]
    pub seeds: SeedSpec,
    /// Family for `extremal-suite`.
    #[serde(default)]
    pub family: Option<Family>,
    /// Triple probability for the random-graph campaigns.
    #[serde(default = "default_edge_prob")]
    pub edge_prob: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default)]
    pub eps1: Option<f64>,
    #[serde(default = "default_budget")]
    pub node_budget: u64,
    /// Largest `n` at which `threshold-check` also runs the cycle search.
    #[serde(default = "default_refute_max")]
    pub refute_max_n: usize,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, HarnessError> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let ns = self.n.values();
        if ns.is_empty() {
            return Err(HarnessError::Config("n range is empty".into()));
        }
        if self.seeds.values().is_empty() {
            return Err(HarnessError::Config("seed list is empty".into()));
        }
        if let Some(&odd) = ns.iter().find(|&&n| n % 2 == 1).filter(|_| self.campaign.needs_even()) {
            return Err(HarnessError::Config(format!("campaign needs even n, got {odd}")));
        }
        if let Some(&small) = ns.iter().find(|&&n| n < 4) {
            return Err(HarnessError::Config(format!("n = {small} is too small")));
        }
        if !(0.0..=1.0).contains(&self.edge_prob) {
            return Err(HarnessError::Config(format!("edge_prob = {} outside [0, 1]", self.edge_prob)));
        }
        if self.campaign == CampaignKind::ExtremalSuite && self.family.is_none() {
            return Err(HarnessError::Config("extremal-suite needs a family".into()));
        }
        self.params(0)
            .validate()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(())
    }

    fn params(&self, seed: u64) -> Parameters {
        let mut p = Parameters::from_beta(self.beta).with_seed(seed);
        if let Some(e) = self.eps1 {
            p = p.with_eps1(e);
        }
        p.search_node_budget = self.node_budget;
        p
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tiling_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_tiling_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncovered: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub id: String,
    pub campaign: CampaignKind,
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub outcome: String,
    pub counters: Counters,
    /// Set only when the relevant independent verifier accepted the output.
    pub verified: bool,
}

impl ResultRecord {
    /// The record with timing fields zeroed, for determinism checks.
    pub fn without_timing(&self) -> ResultRecord {
        let mut r = self.clone();
        r.counters.millis = 0;
        r
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// `true` when both runs produced the same records apart from timing.
pub fn same_up_to_timing(a: &[ResultRecord], b: &[ResultRecord]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.without_timing() == y.without_timing())
}

/// Appends one line per record and flushes after each, so a killed campaign
/// leaves only whole records behind.
pub struct JsonlAppender {
    file: File,
}

impl JsonlAppender {
    pub fn open(path: impl AsRef<Path>) -> io::Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Self { file })
    }

    pub fn append(&mut self, r: &ResultRecord) -> io::Result<()> {
        let mut line = r.to_json_line();
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.flush()
    }
}

pub fn read_jsonl(path: impl AsRef<Path>) -> Result<Vec<ResultRecord>, HarnessError> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| HarnessError::Config(format!("bad record: {e}"))))
        .collect()
}

/// A lossy table view: id, n, seed, outcome, verified, millis.
pub fn records_to_csv(records: &[ResultRecord]) -> String {
    let mut out = String::from("id,family,n,seed,outcome,verified,millis\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.id, r.family, r.n, r.seed, r.outcome, r.verified, r.counters.millis
        ));
    }
    out
}

struct Instance {
    n: usize,
    seed: u64,
}

fn instances(cfg: &ExperimentConfig) -> Vec<Instance> {
    let seeds = cfg.seeds.values();
    let deterministic = matches!(cfg.campaign, CampaignKind::ThresholdCheck);
    let mut out = Vec::new();
    for n in cfg.n.values() {
        if deterministic {
            out.push(Instance { n, seed: seeds[0] });
        } else {
            out.extend(seeds.iter().map(|&seed| Instance { n, seed }));
        }
    }
    out
}

/// Runs every `(n, seed)` instance on a worker pool. Records come back in
/// instance order and, when `cfg.output` is set, are appended to it as they
/// complete in that order.
pub fn run_campaign(cfg: &ExperimentConfig) -> Result<Vec<ResultRecord>, HarnessError> {
    cfg.validate()?;
    let jobs = instances(cfg);
    let mut appender = cfg.output.as_ref().map(JsonlAppender::open).transpose()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| HarnessError::Config(e.to_string()))?;

    let (tx, rx) = mpsc::channel::<(usize, ResultRecord)>();
    let mut out: Vec<Option<ResultRecord>> = vec![None; jobs.len()];
    let mut io_error = None;
    std::thread::scope(|s| {
        s.spawn(|| {
            pool.install(|| {
                jobs.par_iter()
                    .enumerate()
                    .for_each_with(tx, |tx, (i, job)| {
                        let _ = tx.send((i, run_instance(cfg, job)));
                    })
            })
        });
        let mut next = 0;
        for (i, rec) in rx {
            out[i] = Some(rec);
            while next < out.len() && out[next].is_some() {
                if let (Some(app), None) = (appender.as_mut(), &io_error) {
                    if let Err(e) = app.append(out[next].as_ref().unwrap()) {
                        io_error = Some(e);
                    }
                }
                next += 1;
            }
        }
    });
    if let Some(e) = io_error {
        return Err(e.into());
    }
    Ok(out.into_iter().map(|r| r.expect("every job reports")).collect())
}

fn run_instance(cfg: &ExperimentConfig, job: &Instance) -> ResultRecord {
    let start = Instant::now();
    let (n, seed) = (job.n, job.seed);
    let mut rec = match cfg.campaign {
        CampaignKind::ThresholdCheck => threshold_check(cfg, n),
        CampaignKind::DichotomyProbe => dichotomy_probe(cfg, n, seed),
        CampaignKind::ExtremalSuite => extremal_suite(cfg, n, seed),
        CampaignKind::TilingBench => tiling_bench(cfg, n, seed),
    };
    rec.campaign = cfg.campaign;
    rec.n = n;
    rec.seed = seed;
    rec.id = format!("{}/n{}/s{}", rec.family, n, seed);
    rec.counters.millis = start.elapsed().as_millis() as u64;
    rec
}

fn record(family: &str, outcome: impl Into<String>, counters: Counters, verified: bool) -> ResultRecord {
    ResultRecord {
        id: String::new(),
        campaign: CampaignKind::ThresholdCheck,
        family: family.to_string(),
        n: 0,
        seed: 0,
        outcome: outcome.into(),
        counters,
        verified,
    }
}

fn threshold_check(cfg: &ExperimentConfig, n: usize) -> ResultRecord {
    let family = if n % 4 == 0 { "h2" } else { "h1" };
    let (Ok(g), Ok(t)) = (build_extremal_example(n), threshold(n)) else {
        return record(family, "invalid_n", Counters::default(), false);
    };
    let delta = g.graph.min_vertex_degree();
    let mut counters = Counters {
        min_degree: Some(delta),
        threshold: Some(t),
        ..Counters::default()
    };
    let degree_ok = delta as u64 + 1 == t;
    if n > cfg.refute_max_n {
        let outcome = if degree_ok { "degree_matches" } else { "degree_mismatch" };
        return record(family, outcome, counters, degree_ok);
    }
    let opts = SearchOptions {
        node_budget: cfg.node_budget,
        hint: Some(g.b.clone()),
        ..SearchOptions::default()
    };
    match find_loose_hamilton_cycle(&g.graph, &opts) {
        Ok(out) => {
            counters.nodes = Some(out.nodes_expanded);
            // a refutation is trusted only through an independent check
            let refuted = match &out.result {
                SearchResult::RefutedCertificate(c) => crate::certificate::check_certificate(&g.graph, c) == Ok(true),
                SearchResult::RefutedExhaustive => true,
                _ => false,
            };
            record(family, out.status(), counters, degree_ok && refuted)
        }
        Err(e) => record(family, format!("error: {e}"), counters, false),
    }
}

fn dichotomy_probe(cfg: &ExperimentConfig, n: usize, seed: u64) -> ResultRecord {
    let family = format!("random_p{}", cfg.edge_prob);
    let Ok(h) = random_graph(n, cfg.edge_prob, seed) else {
        return record(&family, "invalid_n", Counters::default(), false);
    };
    let tiling = greedy_max_y_tiling(&h, seed);
    let uncovered = n - 4 * tiling.len();
    let counters = Counters {
        min_degree: Some(h.min_vertex_degree()),
        tiling_size: Some(tiling.len()),
        uncovered: Some(uncovered),
        ..Counters::default()
    };
    let verified = tiling.validate(&h).is_ok();
    record(&family, "tiled", counters, verified)
}

fn extremal_instance(cfg: &ExperimentConfig, n: usize, seed: u64) -> Option<(&'static str, ThreeGraph)> {
    match cfg.family? {
        Family::H1Plus => build_h1_plus(n).ok().map(|g| ("h1_plus", g.graph)),
        Family::RandomExtremal => random_extremal(n, cfg.beta, seed).ok().map(|g| ("random_extremal", g.graph)),
    }
}

fn extremal_suite(cfg: &ExperimentConfig, n: usize, seed: u64) -> ResultRecord {
    let Some((family, h)) = extremal_instance(cfg, n, seed) else {
        return record("extremal", "invalid_n", Counters::default(), false);
    };
    let report = solve_extremal(&h, &cfg.params(seed));
    let mut counters = Counters {
        min_degree: Some(h.min_vertex_degree()),
        threshold: threshold(n).ok(),
        ..Counters::default()
    };
    match &report.outcome {
        ExtremalOutcome::Found { cycle } => {
            let verified = verify_loose_hamilton_cycle(&h, cycle);
            record(family, "found", counters, verified)
        }
        ExtremalOutcome::StageFailed { stage, .. } => {
            counters.stage = Some(serde_json::to_value(stage).unwrap().as_str().unwrap_or_default().to_string());
            record(family, "stage_failed", counters, false)
        }
    }
}

const TILING_BENCH_BUDGET: u64 = 5_000_000;

fn tiling_bench(cfg: &ExperimentConfig, n: usize, seed: u64) -> ResultRecord {
    let family = format!("random_p{}", cfg.edge_prob);
    let Ok(h) = random_graph(n, cfg.edge_prob, seed) else {
        return record(&family, "invalid_n", Counters::default(), false);
    };
    let greedy = greedy_max_y_tiling(&h, seed);
    let exact = exact_max_y_tiling(&h, TILING_BENCH_BUDGET);
    let counters = Counters {
        nodes: Some(exact.nodes),
        tiling_size: Some(greedy.len()),
        exact_tiling_size: Some(exact.tiling.len()),
        uncovered: Some(n - 4 * exact.tiling.len()),
        ..Counters::default()
    };
    let outcome = match (exact.optimal, greedy.len() == exact.tiling.len()) {
        (false, _) => "exact_budget_exceeded",
        (true, true) => "greedy_optimal",
        (true, false) => "greedy_suboptimal",
    };
    let verified = exact.optimal && greedy.validate(&h).is_ok() && exact.tiling.validate(&h).is_ok();
    record(&family, outcome, counters, verified)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing_and_validation() {
        let cfg = ExperimentConfig::from_toml_str(
            r#"
            campaign = "threshold-check"
            n = { min = 6, max = 12 }
            "#,
        )
        .unwrap();
        assert_eq!(cfg.n.values(), vec![6, 8, 10, 12]);
        assert_eq!(cfg.seeds.values(), vec![0]);

        let odd = ExperimentConfig::from_toml_str("campaign = \"extremal-suite\"\nfamily = \"h1-plus\"\nn = [16, 17]");
        assert!(matches!(odd, Err(HarnessError::Config(_))));
        let empty = ExperimentConfig::from_toml_str("campaign = \"tiling-bench\"\nn = { min = 10, max = 8 }");
        assert!(matches!(empty, Err(HarnessError::Config(_))));
        let unknown = ExperimentConfig::from_toml_str("campaign = \"tiling-bench\"\nn = [8]\nbogus = 1");
        assert!(matches!(unknown, Err(HarnessError::Toml(_))));
        let no_family = ExperimentConfig::from_toml_str("campaign = \"extremal-suite\"\nn = [16]");
        assert!(matches!(no_family, Err(HarnessError::Config(_))));
    }

    #[test]
    fn seeds_as_range() {
        let cfg = ExperimentConfig::from_toml_str(
            "campaign = \"dichotomy-probe\"\nn = [9]\nseeds = { start = 5, count = 3 }",
        )
        .unwrap();
        assert_eq!(cfg.seeds.values(), vec![5, 6, 7]);
    }
}
