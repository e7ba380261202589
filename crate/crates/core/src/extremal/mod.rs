//! Constructive solver for graphs close to the extremal configuration: a
//! sparse set `B` of size `⌊3n/4⌋`, a short path absorbing the irregular
//! vertices, a balancing step, and a completion through `A' ∪ B'`.

pub mod balance;
pub mod classify;
pub mod completion;
pub mod cover;
pub mod partition;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::constructions::threshold;
use crate::hypergraph::ThreeGraph;
use crate::loose::{check_hamilton_cycle, LooseCycle, LoosePath};
use crate::params::Parameters;
use crate::Vertex;

pub use balance::{balance_and_cap, Balanced};
pub use classify::{classify_vertices, Classification, SizeCheck};
pub use completion::{
    check_completion_precondition, complete_bipartite_stage, has_lifted_pattern, hamilton_path_between, Completion,
};
pub use cover::{
    build_b_prime_structure, build_cover_path, check_cover_path, connect_pair, v0_piece, Connector, CoverPathCheck,
};
pub use partition::{
    exact_min_partition, find_extremal_partition, is_beta_extremal, local_search, lowest_degree_set, ExtremalPartition,
};

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
pub enum StageError {
    #[error("no connector between {u} and {v} avoiding the used vertices")]
    NoConnector { u: Vertex, v: Vertex },
    #[error("q = {q}: no {case} among the {edges} edges inside B'")]
    NoStructure { q: usize, case: String, edges: usize },
    #[error("no two disjoint link pairs of {0} inside the free part of B'")]
    NoV0Piece(Vertex),
    #[error("cover path: {0}")]
    CoverPath(String),
    #[error("B' is empty")]
    EmptyBPrime,
    #[error("l = {0} is even")]
    Parity(i64),
    #[error("l = {0} is below 1")]
    Unbalanced(i64),
    #[error("no edge from {0} into free A' x B'")]
    NoExtension(Vertex),
    #[error("no ABB edge capping {0}")]
    NoCap(Vertex),
    #[error("balanced path has {len} vertices, above {bound:.2}")]
    TooLong { len: usize, bound: f64 },
    #[error("|X| = {x}, |Z| = {z} violates |Z| = 3(|X| - 1)")]
    SizeMismatch { x: usize, z: usize },
    #[error("ends {x0}, {x1} must be distinct vertices of X")]
    BadEnds { x0: Vertex, x1: Vertex },
    #[error("vertex {vertex} misses {missing} triples, above {bound:.2}")]
    Precondition { vertex: Vertex, missing: u64, bound: f64 },
    #[error("no perfect matching of good pairs in {attempts} splits")]
    NoPerfectMatching { attempts: u32 },
    #[error("coverage stayed below 49m/64 (best {best}, m = {m}) in {attempts} attempts")]
    CoverageUnreachable { attempts: u32, best: usize, m: usize },
    #[error("no Hamilton path in the index graph (m = {m})")]
    NoGammaPath { m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Partition,
    Classification,
    Sizes,
    Structure,
    CoverPath,
    Balance,
    Completion,
    Verification,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageRecord {
    pub stage: Stage,
    pub passed: bool,
    pub detail: String,
    pub counters: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SolverTrace {
    pub stages: Vec<StageRecord>,
    pub warnings: Vec<String>,
    pub restarts: usize,
}

impl SolverTrace {
    fn record(&mut self, stage: Stage, passed: bool, detail: impl Into<String>, counters: &[(&str, i64)]) {
        self.stages.push(StageRecord {
            stage,
            passed,
            detail: detail.into(),
            counters: counters.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        });
    }

    pub fn failed_stage(&self) -> Option<Stage> {
        self.stages.iter().find(|s| !s.passed).map(|s| s.stage)
    }
}

/// Intermediate objects of a successful run, kept for contract checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverArtifacts {
    pub cover_path: LoosePath,
    pub q: LoosePath,
    pub a1: VertexSet,
    pub b1: VertexSet,
    pub completion: LoosePath,
    pub gamma_min_index_degree: usize,
    pub gamma_index_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExtremalOutcome {
    Found { cycle: LooseCycle },
    StageFailed { stage: Stage, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub outcome: ExtremalOutcome,
    pub trace: SolverTrace,
    pub artifacts: Option<SolverArtifacts>,
    pub millis: u64,
}

impl ExtremalReport {
    pub fn cycle(&self) -> Option<&LooseCycle> {
        match &self.outcome {
            ExtremalOutcome::Found { cycle } => Some(cycle),
            ExtremalOutcome::StageFailed { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.cycle().is_some()
    }
}

/// Partition restarts allowed when the classification contradicts the
/// consequences of a globally minimal `e(B)`.
pub const MAX_RESTARTS: usize = 5;

/// Runs the whole pipeline. Never claims that no cycle exists: anything
/// other than a verified cycle is a stage-labeled failure.
pub fn solve_extremal(h: &ThreeGraph, params: &Parameters) -> ExtremalReport {
    let start = Instant::now();
    let mut trace = SolverTrace::default();
    let mut artifacts = None;
    let outcome = match run(h, params, &mut trace, &mut artifacts) {
        Ok(cycle) => ExtremalOutcome::Found { cycle },
        Err((stage, reason)) => ExtremalOutcome::StageFailed { stage, reason },
    };
    ExtremalReport {
        outcome,
        trace,
        artifacts,
        millis: start.elapsed().as_millis() as u64,
    }
}

type Failure = (Stage, String);

fn fail(trace: &mut SolverTrace, stage: Stage, reason: String, counters: &[(&str, i64)]) -> Failure {
    trace.record(stage, false, reason.clone(), counters);
    (stage, reason)
}

fn run(
    h: &ThreeGraph,
    params: &Parameters,
    trace: &mut SolverTrace,
    artifacts: &mut Option<SolverArtifacts>,
) -> Result<LooseCycle, Failure> {
    let n = h.n();
    if n < 8 || n % 2 == 1 {
        return Err(fail(trace, Stage::Partition, format!("n = {n} must be even and at least 8"), &[]));
    }
    if let Ok(t) = threshold(n) {
        let delta = h.min_vertex_degree() as u64;
        if delta < t {
            trace.warnings.push(format!("minimum degree {delta} is below the threshold {t}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let budget = params.beta * (n as f64).powi(3);

    let mut part = partition::local_search(h, partition::lowest_degree_set(h));
    let mut cls;
    loop {
        let counters = [
            ("e_b", part.e_b as i64),
            ("swaps", part.swaps as i64),
            ("restart", trace.restarts as i64),
        ];
        if !partition::within_budget(n, &part, params.beta) {
            let why = format!("e(B) = {} exceeds beta n^3 = {budget:.2}", part.e_b);
            return Err(fail(trace, Stage::Partition, why, &counters));
        }
        trace.record(Stage::Partition, true, format!("e(B) = {} <= {budget:.2}", part.e_b), &counters);

        cls = classify_vertices(h, &part, params.eps1);
        let counters = [
            ("a_prime", cls.a_prime.len() as i64),
            ("b_prime", cls.b_prime.len() as i64),
            ("v0", cls.v0.len() as i64),
            ("q", cls.q() as i64),
        ];
        if cls.minimality_consistent() {
            trace.record(Stage::Classification, true, "consistent with a minimal e(B)", &counters);
            break;
        }
        if trace.restarts == MAX_RESTARTS {
            let why = "classification contradicts minimality of e(B) after all restarts".to_string();
            return Err(fail(trace, Stage::Classification, why, &counters));
        }
        trace.record(Stage::Classification, false, "inconsistent; restarting the partition search", &counters);
        trace.restarts += 1;
        let k = (part.b.len() / 8).max(1);
        part = partition::local_search(h, partition::perturb(&part.b, k, &mut rng));
    }

    let s = &cls.sizes;
    let counters = [
        ("a_minus_a_prime", s.a_minus_a_prime as i64),
        ("b_minus_b_prime", s.b_minus_b_prime as i64),
        ("a_prime_minus_a", s.a_prime_minus_a as i64),
        ("b_prime_minus_b", s.b_prime_minus_b as i64),
        ("v0", s.v0 as i64),
    ];
    if !s.holds() {
        let why = format!(
            "size bounds fail: differences must be <= {:.3}, |V0| <= {:.3}",
            s.diff_bound, s.v0_bound
        );
        return Err(fail(trace, Stage::Sizes, why, &counters));
    }
    trace.record(Stage::Sizes, true, "all size bounds hold", &counters);

    let structure = build_b_prime_structure(h, &cls).map_err(|e| fail(trace, Stage::Structure, e.to_string(), &[]))?;
    trace.record(
        Stage::Structure,
        true,
        format!("{} pieces for q = {}", structure.len(), cls.q()),
        &[("pieces", structure.len() as i64)],
    );

    let cover = build_cover_path(h, &cls, &structure).map_err(|e| fail(trace, Stage::CoverPath, e.to_string(), &[]))?;
    let detail = if cover.is_empty() {
        "nothing to cover".to_string()
    } else {
        format!("{} vertices", cover.len())
    };
    trace.record(Stage::CoverPath, true, detail, &[("len", cover.len() as i64)]);

    let bal = balance_and_cap(h, &cls, &cover).map_err(|e| fail(trace, Stage::Balance, e.to_string(), &[]))?;
    let counters = [
        ("l", bal.l),
        ("extensions", bal.extensions as i64),
        ("q_len", bal.q.len() as i64),
        ("a1", bal.a1.len() as i64),
        ("b1", bal.b1.len() as i64),
        ("seeded", bal.seeded as i64),
    ];
    if bal.b1.len() != 3 * (bal.a1.len() - 1) {
        let why = format!("|B1| = {} but |A1| = {}", bal.b1.len(), bal.a1.len());
        return Err(fail(trace, Stage::Balance, why, &counters));
    }
    trace.record(Stage::Balance, true, "|B1| = 3(|A1| - 1)", &counters);

    // the completion runs from x1 back to x0 so that it closes Q
    let comp = complete_bipartite_stage(h, &bal.a1, &bal.b1, bal.x1, bal.x0, params, &mut rng)
        .map_err(|e| fail(trace, Stage::Completion, e.to_string(), &[]))?;
    trace.record(
        Stage::Completion,
        true,
        format!("m = {}", comp.m),
        &[
            ("m", comp.m as i64),
            ("attempts", comp.attempts as i64),
            ("min_coverage", comp.min_coverage as i64),
            ("gamma_min_index_degree", comp.gamma_min_index_degree as i64),
        ],
    );

    let mut seq = bal.q.seq.clone();
    seq.extend_from_slice(&comp.path.seq[1..comp.path.len() - 1]);
    *artifacts = Some(SolverArtifacts {
        cover_path: cover,
        q: bal.q,
        a1: bal.a1,
        b1: bal.b1,
        completion: comp.path,
        gamma_min_index_degree: comp.gamma_min_index_degree,
        gamma_index_bound: comp.gamma_index_bound,
    });
    if let Err(v) = check_hamilton_cycle(h, &seq) {
        return Err(fail(trace, Stage::Verification, v.to_string(), &[]));
    }
    trace.record(Stage::Verification, true, "loose Hamilton cycle verified", &[("len", seq.len() as i64)]);
    Ok(LooseCycle::new(seq))
}
