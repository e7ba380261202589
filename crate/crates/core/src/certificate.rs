//! Counting barriers that rule out a loose Hamilton cycle.
//!
//! A loose Hamilton cycle has `n/2` edges and every vertex lies in at most two
//! of them, so at least `n/2 - 2|A|` edges lie inside `B = V \ A`. If `B` spans
//! no edge and that count is positive, or every edge inside `B` goes through
//! one fixed pair (two cycle edges never share two vertices) and the count is
//! at least two, no such cycle exists.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::hypergraph::ThreeGraph;
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CertificateKind {
    IndependentBarrier,
    PairCoverBarrier { b1: Vertex, b2: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub kind: CertificateKind,
    pub b: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate set has universe {got}, graph has {expected} vertices")]
    UniverseMismatch { expected: usize, got: usize },
    #[error("pair ({0}, {1}) is not two distinct vertices of B")]
    BadPair(Vertex, Vertex),
    #[error("loose Hamilton cycles need an even number of vertices, got {0}")]
    OddOrder(usize),
}

/// `n/2 - 2|A|`: the number of cycle edges forced inside `B`.
pub fn forced_inside(n: usize, b_len: usize) -> i64 {
    (n / 2) as i64 - 2 * (n - b_len) as i64
}

/// `Ok(true)` iff the barrier holds in `h`, which rules out a loose Hamilton
/// cycle.
pub fn check_certificate(h: &ThreeGraph, cert: &Certificate) -> Result<bool, CertificateError> {
    let n = h.n();
    if cert.b.universe() != n {
        return Err(CertificateError::UniverseMismatch {
            expected: n,
            got: cert.b.universe(),
        });
    }
    if n % 2 == 1 {
        return Err(CertificateError::OddOrder(n));
    }
    let forced = forced_inside(n, cert.b.len());
    match cert.kind {
        CertificateKind::IndependentBarrier => Ok(forced >= 1 && h.e_inside(&cert.b) == 0),
        CertificateKind::PairCoverBarrier { b1, b2 } => {
            if b1 == b2 || !cert.b.contains(b1) || !cert.b.contains(b2) {
                return Err(CertificateError::BadPair(b1, b2));
            }
            let b = &cert.b;
            let all_through_pair = h
                .edges()
                .iter()
                .filter(|t| b.contains(t.a) && b.contains(t.b) && b.contains(t.c))
                .all(|t| t.contains(b1) && t.contains(b2));
            Ok(forced >= 2 && all_through_pair)
        }
    }
}

struct Transversal<'a> {
    edges: &'a [[Vertex; 3]],
    chosen: Vec<bool>,
    picked: Vec<Vertex>,
    nodes: u64,
    budget: u64,
}

impl Transversal<'_> {
    /// Depth-bounded branching: some vertex of the first unhit edge must be
    /// in any transversal, so at most `3^k` leaves.
    fn search(&mut self, k: usize, blocked: &[Vertex]) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let Some(e) = self
            .edges
            .iter()
            .find(|e| !e.iter().any(|&v| self.chosen[v]))
        else {
            return Some(true);
        };
        if k == 0 {
            return Some(false);
        }
        for &v in e {
            if blocked.contains(&v) {
                continue;
            }
            self.chosen[v] = true;
            self.picked.push(v);
            match self.search(k - 1, blocked) {
                Some(false) => {}
                other => return other,
            }
            self.picked.pop();
            self.chosen[v] = false;
        }
        Some(false)
    }
}

/// Some `A` of size at most `k` meeting every edge in `edges`, avoiding
/// `blocked`. `None` when the node budget runs out first.
fn small_transversal(
    n: usize,
    edges: &[[Vertex; 3]],
    k: usize,
    blocked: &[Vertex],
    budget: u64,
    nodes: &mut u64,
) -> Option<Option<Vec<Vertex>>> {
    let mut t = Transversal {
        edges,
        chosen: vec![false; n],
        picked: Vec::new(),
        nodes: 0,
        budget,
    };
    let r = t.search(k, blocked);
    *nodes += t.nodes;
    r.map(|found| found.then_some(t.picked))
}

fn as_arrays(h: &ThreeGraph) -> Vec<[Vertex; 3]> {
    h.edges().iter().map(|t| t.vertices()).collect()
}

fn max_a_for(n: usize, forced: i64) -> Option<usize> {
    // n/2 - 2|A| >= forced
    let slack = (n / 2) as i64 - forced;
    (slack >= 0).then_some((slack / 2) as usize)
}

fn pair_cover_for(h: &ThreeGraph, b: &VertexSet) -> Option<Certificate> {
    let inside = h
        .edges()
        .iter()
        .find(|t| b.contains(t.a) && b.contains(t.b) && b.contains(t.c));
    let pairs: Vec<(Vertex, Vertex)> = match inside {
        Some(t) => vec![(t.a, t.b), (t.a, t.c), (t.b, t.c)],
        None => {
            let v = b.to_vec();
            if v.len() < 2 {
                return None;
            }
            vec![(v[0], v[1])]
        }
    };
    pairs.into_iter().find_map(|(b1, b2)| {
        let c = Certificate {
            kind: CertificateKind::PairCoverBarrier { b1, b2 },
            b: b.clone(),
        };
        check_certificate(h, &c).ok()?.then_some(c)
    })
}

fn independent_for(h: &ThreeGraph, b: &VertexSet) -> Option<Certificate> {
    let c = Certificate {
        kind: CertificateKind::IndependentBarrier,
        b: b.clone(),
    };
    check_certificate(h, &c).ok()?.then_some(c)
}

/// Looks for a barrier: first on `hint`, then on complements of the
/// highest-degree vertices, then by exact bounded-size transversal search.
/// Returns the certificate and the number of search nodes spent.
pub fn find_certificate(h: &ThreeGraph, hint: Option<&VertexSet>, budget: u64) -> (Option<Certificate>, u64) {
    let n = h.n();
    if n % 2 == 1 || n < 6 {
        return (None, 0);
    }
    if let Some(b) = hint.filter(|b| b.universe() == n) {
        if let Some(c) = independent_for(h, b).or_else(|| pair_cover_for(h, b)) {
            return (Some(c), 0);
        }
    }

    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let k1 = max_a_for(n, 1).unwrap_or(0);
    for k in 0..=k1 {
        let b = VertexSet::from_slice(n, &by_degree[k..]);
        if let Some(c) = independent_for(h, &b).or_else(|| pair_cover_for(h, &b)) {
            return (Some(c), 0);
        }
    }

    let edges = as_arrays(h);
    let mut nodes = 0;
    match small_transversal(n, &edges, k1, &[], budget, &mut nodes) {
        Some(Some(a)) => {
            let b = VertexSet::from_slice(n, &a).complement();
            return (independent_for(h, &b), nodes);
        }
        Some(None) => {}
        None => return (None, nodes),
    }

    let Some(k2) = max_a_for(n, 2) else {
        return (None, nodes);
    };
    for b1 in 0..n {
        for b2 in b1 + 1..n {
            let rest: Vec<[Vertex; 3]> = edges
                .iter()
                .filter(|e| !(e.contains(&b1) && e.contains(&b2)))
                .copied()
                .collect();
            let left = budget.saturating_sub(nodes);
            match small_transversal(n, &rest, k2, &[b1, b2], left, &mut nodes) {
                Some(Some(a)) => {
                    let b = VertexSet::from_slice(n, &a).complement();
                    let c = Certificate {
                        kind: CertificateKind::PairCoverBarrier { b1, b2 },
                        b,
                    };
                    debug_assert_eq!(check_certificate(h, &c), Ok(true));
                    return (Some(c), nodes);
                }
                Some(None) => {}
                None => return (None, nodes),
            }
        }
    }
    (None, nodes)
}
