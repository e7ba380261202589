//! Exact backtracking search for loose Hamilton cycles.
//!
//! The cycle is built junction by junction: from the current end `cur` we pick
//! an edge `{cur, mid, next}` with both new vertices unused, and close with an
//! edge `{cur, w, start}` once a single vertex `w` remains. Vertex 0 is either
//! a junction, in which case the cycle is rooted at it, or the middle of an
//! edge `{a, 0, b}` with `a < b`, in which case the cycle is rooted at `a` and
//! starts `a, 0, b`. Every loose Hamilton cycle is reached by one of these
//! roots.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::{self, iter_words, VertexSet};
use crate::certificate::{find_certificate, Certificate};
use crate::hypergraph::ThreeGraph;
use crate::loose::{self, LooseCycle, LoosePath};
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("loose Hamilton cycles need an even number of vertices, got {0}")]
    OddOrder(usize),
    #[error("search needs at least 6 vertices, got {0}")]
    TooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum SearchResult {
    Found(LooseCycle),
    RefutedExhaustive,
    RefutedCertificate(Certificate),
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub nodes_expanded: u64,
    pub millis: u64,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self.result, SearchResult::Found(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(
            self.result,
            SearchResult::RefutedExhaustive | SearchResult::RefutedCertificate(_)
        )
    }

    pub fn status(&self) -> &'static str {
        match self.result {
            SearchResult::Found(_) => "found",
            SearchResult::RefutedExhaustive => "refuted_exhaustive",
            SearchResult::RefutedCertificate(_) => "refuted_certificate",
            SearchResult::BudgetExceeded(_) => "budget_exceeded",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub use_certificates: bool,
    pub node_budget: u64,
    /// A candidate barrier set to test before the general certificate search.
    pub hint: Option<VertexSet>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            use_certificates: true,
            node_budget: 20_000_000,
            hint: None,
        }
    }
}

impl SearchOptions {
    pub fn exhaustive(node_budget: u64) -> Self {
        Self {
            use_certificates: false,
            node_budget,
            hint: None,
        }
    }
}

struct Dfs<'a> {
    h: &'a ThreeGraph,
    n: usize,
    start: Vertex,
    unused: Vec<u64>,
    remaining: usize,
    seq: Vec<Vertex>,
    nodes: u64,
    budget: u64,
    scratch: Vec<u64>,
}

enum Step {
    Found,
    Dead,
    OutOfBudget,
}

impl<'a> Dfs<'a> {
    fn new(h: &'a ThreeGraph, budget: u64) -> Self {
        let n = h.n();
        Self {
            h,
            n,
            start: 0,
            unused: VertexSet::full(n).words().to_vec(),
            remaining: n,
            seq: Vec::with_capacity(n),
            nodes: 0,
            budget,
            scratch: vec![0; bitset::words_for(n)],
        }
    }

    #[inline]
    fn take(&mut self, v: Vertex) {
        self.unused[v / 64] &= !(1 << (v % 64));
        self.remaining -= 1;
        self.seq.push(v);
    }

    #[inline]
    fn give_back(&mut self) {
        let v = self.seq.pop().expect("nonempty sequence");
        self.unused[v / 64] |= 1 << (v % 64);
        self.remaining += 1;
    }

    #[inline]
    fn is_unused(&self, v: Vertex) -> bool {
        self.unused[v / 64] >> (v % 64) & 1 == 1
    }

    /// Ordered `(mid, next)` continuations from `v` inside the unused set.
    fn continuations(&self, v: Vertex) -> usize {
        iter_words(&self.unused)
            .map(|m| bitset::intersection_len(self.h.link(v, m), &self.unused))
            .sum()
    }

    /// Every unused vertex must still fit in some edge whose other two
    /// vertices are unused or are the open ends of the path.
    fn uncovered_ok(&mut self, cur: Vertex) -> bool {
        self.scratch.copy_from_slice(&self.unused);
        self.scratch[cur / 64] |= 1 << (cur % 64);
        self.scratch[self.start / 64] |= 1 << (self.start % 64);
        let avail = &self.scratch;
        'outer: for w in iter_words(&self.unused) {
            for x in iter_words(avail) {
                if x != w && bitset::words_any(self.h.link(w, x), avail) {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// The closing edge `{x, y, start}` needs `x` unused or `cur`, `y` unused.
    fn closable(&self, cur: Vertex) -> bool {
        bitset::words_any(self.h.link(self.start, cur), &self.unused)
            || iter_words(&self.unused).any(|x| bitset::words_any(self.h.link(self.start, x), &self.unused))
    }

    fn extend(&mut self, cur: Vertex) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        if self.remaining == 1 {
            let w = iter_words(&self.unused).next().expect("one vertex left");
            if self.h.has_edge(cur, w, self.start) {
                self.seq.push(w);
                return Step::Found;
            }
            return Step::Dead;
        }
        if !self.closable(cur) || !self.uncovered_ok(cur) {
            return Step::Dead;
        }

        let last_step = self.remaining == 3;
        let mut cands: Vec<(usize, Vertex, Vertex)> = Vec::new();
        let mids: Vec<Vertex> = iter_words(&self.unused).collect();
        for mid in mids {
            for next in iter_words(self.h.link(cur, mid)) {
                if !self.is_unused(next) {
                    continue;
                }
                let score = if last_step {
                    let w = iter_words(&self.unused)
                        .find(|&w| w != mid && w != next)
                        .expect("three vertices left");
                    usize::from(self.h.has_edge(next, w, self.start))
                } else {
                    self.unused[mid / 64] &= !(1 << (mid % 64));
                    self.unused[next / 64] &= !(1 << (next % 64));
                    let c = self.continuations(next);
                    self.unused[mid / 64] |= 1 << (mid % 64);
                    self.unused[next / 64] |= 1 << (next % 64);
                    c
                };
                if score > 0 {
                    cands.push((score, mid, next));
                }
            }
        }
        cands.sort_unstable();

        for (_, mid, next) in cands {
            self.take(mid);
            self.take(next);
            match self.extend(next) {
                Step::Dead => {}
                other => return other,
            }
            self.give_back();
            self.give_back();
        }
        Step::Dead
    }

    fn run(&mut self) -> Option<Option<LooseCycle>> {
        // Rooted at 0 as a junction.
        self.start = 0;
        self.take(0);
        match self.extend(0) {
            Step::Found => return Some(Some(LooseCycle::new(self.seq.clone()))),
            Step::OutOfBudget => return None,
            Step::Dead => {}
        }
        self.give_back();

        // 0 in the middle of {a, 0, b}, a < b.
        for a in 1..self.n {
            for b in iter_words(self.h.link(0, a)).filter(|&b| b > a).collect::<Vec<_>>() {
                self.start = a;
                self.take(a);
                self.take(0);
                self.take(b);
                match self.extend(b) {
                    Step::Found => return Some(Some(LooseCycle::new(self.seq.clone()))),
                    Step::OutOfBudget => return None,
                    Step::Dead => {}
                }
                self.give_back();
                self.give_back();
                self.give_back();
            }
        }
        Some(None)
    }
}

/// Decides loose Hamiltonicity exactly, within `opts.node_budget` search nodes.
pub fn find_loose_hamilton_cycle(h: &ThreeGraph, opts: &SearchOptions) -> Result<SearchOutcome, SearchError> {
    let n = h.n();
    if n % 2 == 1 {
        return Err(SearchError::OddOrder(n));
    }
    if n < 6 {
        return Err(SearchError::TooSmall(n));
    }
    let t0 = Instant::now();
    let mut nodes = 0;
    if opts.use_certificates {
        let (cert, spent) = find_certificate(h, opts.hint.as_ref(), opts.node_budget);
        nodes += spent;
        if let Some(c) = cert {
            return Ok(SearchOutcome {
                result: SearchResult::RefutedCertificate(c),
                nodes_expanded: nodes,
                millis: t0.elapsed().as_millis() as u64,
            });
        }
    }
    let mut dfs = Dfs::new(h, opts.node_budget.saturating_sub(nodes).max(1));
    let result = match dfs.run() {
        Some(Some(c)) => {
            debug_assert!(loose::verify_loose_hamilton_cycle(h, &c));
            SearchResult::Found(c)
        }
        Some(None) => SearchResult::RefutedExhaustive,
        None => SearchResult::BudgetExceeded(dfs.nodes + nodes),
    };
    Ok(SearchOutcome {
        result,
        nodes_expanded: nodes + dfs.nodes,
        millis: t0.elapsed().as_millis() as u64,
    })
}

/// A loose path `u b1 a b2 v` of two edges avoiding `forbidden`, scanning
/// middle vertices `a` in increasing order; at most `budget` candidates for
/// `a` are examined.
pub fn find_loose_path_between(
    h: &ThreeGraph,
    u: Vertex,
    v: Vertex,
    forbidden: &VertexSet,
    budget: usize,
) -> Option<LoosePath> {
    let n = h.n();
    if u == v || u >= n || v >= n || forbidden.contains(u) || forbidden.contains(v) {
        return None;
    }
    let mut free = forbidden.complement();
    free.remove(u);
    free.remove(v);
    for a in free.iter().take(budget) {
        let mut left = h.link_iter_in(u, a, &free);
        let rights: Vec<Vertex> = h.link_iter_in(a, v, &free).take(2).collect();
        if rights.is_empty() {
            continue;
        }
        if let Some(b1) = left.find(|&b1| rights.iter().any(|&b2| b2 != b1)) {
            let b2 = *rights.iter().find(|&&b2| b2 != b1).expect("checked above");
            return Some(LoosePath::new(vec![u, b1, a, b2, v]));
        }
    }
    None
}
