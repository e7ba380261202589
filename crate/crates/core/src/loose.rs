//! Loose paths `v1 v2 ... v_{2k+1}` with edges `v_{2i-1} v_{2i} v_{2i+1}`,
//! and loose cycles, where the last edge wraps around to `v1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::hypergraph::ThreeGraph;
use crate::Vertex;

/// First reason a sequence fails to be a loose path or cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Paths need odd length, cycles even length of at least six.
    BadLength(usize),
    OutOfRange { position: usize, vertex: Vertex },
    Repeated { vertex: Vertex, first: usize, second: usize },
    MissingEdge { position: usize, triple: [Vertex; 3] },
    NotSpanning { covered: usize, n: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadLength(l) => write!(f, "sequence length {l} is not admissible"),
            Violation::OutOfRange { position, vertex } => {
                write!(f, "vertex {vertex} at position {position} is out of range")
            }
            Violation::Repeated { vertex, first, second } => {
                write!(f, "vertex {vertex} appears at positions {first} and {second}")
            }
            Violation::MissingEdge { position, triple } => write!(
                f,
                "edge {} starting at position {position} is not in the graph",
                format_args!("{{{},{},{}}}", triple[0], triple[1], triple[2])
            ),
            Violation::NotSpanning { covered, n } => write!(f, "covers {covered} of {n} vertices"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoosePath {
    pub seq: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LooseCycle {
    pub seq: Vec<Vertex>,
}

impl LoosePath {
    pub fn new(seq: Vec<Vertex>) -> Self {
        Self { seq }
    }

    /// A path with no edges consisting of one vertex.
    pub fn single(v: Vertex) -> Self {
        Self { seq: vec![v] }
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn num_edges(&self) -> usize {
        self.seq.len().saturating_sub(1) / 2
    }

    pub fn first(&self) -> Option<Vertex> {
        self.seq.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.seq.last().copied()
    }

    pub fn edges(&self) -> Vec<[Vertex; 3]> {
        self.seq
            .windows(3)
            .step_by(2)
            .map(|w| [w[0], w[1], w[2]])
            .collect()
    }

    pub fn reversed(&self) -> Self {
        Self {
            seq: self.seq.iter().rev().copied().collect(),
        }
    }

    /// Concatenates two paths that share the end vertex of `self` and the
    /// start vertex of `other`.
    pub fn join(&self, other: &LoosePath) -> Option<LoosePath> {
        match (self.last(), other.first()) {
            (None, _) => Some(other.clone()),
            (_, None) => Some(self.clone()),
            (Some(x), Some(y)) if x == y => {
                let mut seq = self.seq.clone();
                seq.extend_from_slice(&other.seq[1..]);
                Some(LoosePath { seq })
            }
            _ => None,
        }
    }
}

impl LooseCycle {
    pub fn new(seq: Vec<Vertex>) -> Self {
        Self { seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn edges(&self) -> Vec<[Vertex; 3]> {
        let l = self.seq.len();
        (0..l / 2)
            .map(|i| [self.seq[2 * i], self.seq[2 * i + 1], self.seq[(2 * i + 2) % l]])
            .collect()
    }
}

fn check_distinct(n: usize, seq: &[Vertex]) -> Result<(), Violation> {
    let mut seen = vec![usize::MAX; n];
    for (i, &v) in seq.iter().enumerate() {
        if v >= n {
            return Err(Violation::OutOfRange { position: i, vertex: v });
        }
        if seen[v] != usize::MAX {
            return Err(Violation::Repeated {
                vertex: v,
                first: seen[v],
                second: i,
            });
        }
        seen[v] = i;
    }
    Ok(())
}

/// Checks the loose path invariants. The empty sequence and a single vertex
/// are accepted as edgeless paths.
pub fn check_path(h: &ThreeGraph, seq: &[Vertex]) -> Result<(), Violation> {
    if seq.len() % 2 == 0 && !seq.is_empty() {
        return Err(Violation::BadLength(seq.len()));
    }
    check_distinct(h.n(), seq)?;
    for (i, w) in seq.windows(3).enumerate().step_by(2) {
        if !h.has_edge(w[0], w[1], w[2]) {
            return Err(Violation::MissingEdge {
                position: i,
                triple: [w[0], w[1], w[2]],
            });
        }
    }
    Ok(())
}

pub fn check_cycle(h: &ThreeGraph, seq: &[Vertex]) -> Result<(), Violation> {
    let l = seq.len();
    if l % 2 == 1 || l < 6 {
        return Err(Violation::BadLength(l));
    }
    check_distinct(h.n(), seq)?;
    for i in (0..l).step_by(2) {
        let t = [seq[i], seq[i + 1], seq[(i + 2) % l]];
        if !h.has_edge(t[0], t[1], t[2]) {
            return Err(Violation::MissingEdge { position: i, triple: t });
        }
    }
    Ok(())
}

fn check_spanning(h: &ThreeGraph, len: usize) -> Result<(), Violation> {
    if len == h.n() {
        Ok(())
    } else {
        Err(Violation::NotSpanning { covered: len, n: h.n() })
    }
}

pub fn check_hamilton_path(h: &ThreeGraph, seq: &[Vertex]) -> Result<(), Violation> {
    check_path(h, seq)?;
    check_spanning(h, seq.len())
}

pub fn check_hamilton_cycle(h: &ThreeGraph, seq: &[Vertex]) -> Result<(), Violation> {
    check_cycle(h, seq)?;
    check_spanning(h, seq.len())
}

pub fn verify_loose_path(h: &ThreeGraph, p: &LoosePath) -> bool {
    check_path(h, &p.seq).is_ok()
}

pub fn verify_loose_cycle(h: &ThreeGraph, c: &LooseCycle) -> bool {
    check_cycle(h, &c.seq).is_ok()
}

pub fn verify_loose_hamilton_cycle(h: &ThreeGraph, c: &LooseCycle) -> bool {
    check_hamilton_cycle(h, &c.seq).is_ok()
}
