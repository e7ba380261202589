//! Connectors, the structures inside `B'`, and the short path covering `V0`.

use serde::Serialize;

use super::classify::Classification;
use super::StageError;
use crate::bitset::VertexSet;
use crate::hypergraph::{ThreeGraph, Triple};
use crate::loose::{check_path, LoosePath};
use crate::Vertex;

/// `u b1 a b2 v` is a loose path: `{u, b1, a}` and `{a, b2, v}` are edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Connector {
    pub a: Vertex,
    pub b1: Vertex,
    pub b2: Vertex,
}

/// Finds `a ∈ A' \ S` and distinct `b1, b2 ∈ B' \ S` with `u b1 a` and
/// `a b2 v` edges.
///
/// Scans the auxiliary bipartite graph of pairs `(a, b)` with both `uab` and
/// `vab` edges for some `a` of degree at least two; if none exists, falls
/// back to any `a` whose two links are distinct.
pub fn connect_pair(
    h: &ThreeGraph,
    cls: &Classification,
    u: Vertex,
    v: Vertex,
    forbidden: &VertexSet,
) -> Result<Connector, StageError> {
    let mut a_pool = cls.a_prime.difference(forbidden);
    let mut b_pool = cls.b_prime.difference(forbidden);
    for x in [u, v] {
        a_pool.remove(x);
        b_pool.remove(x);
    }
    for a in a_pool.iter() {
        let mut both = h
            .link_iter_in(u, a, &b_pool)
            .filter(|&b| h.has_edge(v, a, b));
        if let (Some(b1), Some(b2)) = (both.next(), both.next()) {
            return Ok(Connector { a, b1, b2 });
        }
    }
    for a in a_pool.iter() {
        for b1 in h.link_iter_in(u, a, &b_pool) {
            if let Some(b2) = h.link_iter_in(a, v, &b_pool).find(|&b| b != b1) {
                return Ok(Connector { a, b1, b2 });
            }
        }
    }
    Err(StageError::NoConnector { u, v })
}

fn edge_path(t: &Triple) -> LoosePath {
    LoosePath::new(vec![t.a, t.b, t.c])
}

/// Two edges sharing exactly `w` as the path `x y w s t`.
fn two_edge_path(e1: &Triple, e2: &Triple) -> LoosePath {
    let w = e1.vertices().into_iter().find(|&x| e2.contains(x)).expect("edges share a vertex");
    let first: Vec<Vertex> = e1.vertices().into_iter().filter(|&x| x != w).collect();
    let second: Vec<Vertex> = e2.vertices().into_iter().filter(|&x| x != w).collect();
    LoosePath::new(vec![first[0], first[1], w, second[0], second[1]])
}

/// `k` pairwise disjoint edges among `edges`, by budgeted backtracking.
fn disjoint_edges(edges: &[Triple], k: usize, budget: &mut u64) -> Option<Vec<Triple>> {
    fn go(edges: &[Triple], from: usize, k: usize, chosen: &mut Vec<Triple>, budget: &mut u64) -> bool {
        if chosen.len() == k {
            return true;
        }
        for i in from..edges.len() {
            if edges.len() - i < k - chosen.len() || *budget == 0 {
                return false;
            }
            *budget -= 1;
            let e = edges[i];
            if chosen.iter().all(|c| c.shared(&e) == 0) {
                chosen.push(e);
                if go(edges, i + 1, k, chosen, budget) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(k);
    go(edges, 0, k, &mut chosen, budget).then_some(chosen)
}

const STRUCTURE_BUDGET: u64 = 2_000_000;

/// The pieces inside `B'` that absorb the surplus created by `q = |A ∩ B'|`
/// vertices of `A` sitting in `B'`: nothing for `q = 0`; one edge for `q = 1`
/// and `n ≢ 0 (mod 4)`; two edges meeting in at most one vertex for `q = 1`
/// and `4 | n`; `2q` disjoint edges for `q ≥ 2`.
pub fn build_b_prime_structure(h: &ThreeGraph, cls: &Classification) -> Result<Vec<LoosePath>, StageError> {
    let q = cls.q();
    if q == 0 {
        return Ok(Vec::new());
    }
    let inside: Vec<Triple> = h
        .edges()
        .iter()
        .copied()
        .filter(|t| t.vertices().iter().all(|&x| cls.b_prime.contains(x)))
        .collect();
    let not_found = |case: &str| StageError::NoStructure {
        q,
        case: case.to_string(),
        edges: inside.len(),
    };
    if q == 1 && h.n() % 4 != 0 {
        return inside.first().map(|t| vec![edge_path(t)]).ok_or_else(|| not_found("one edge"));
    }
    if q == 1 {
        let mut disjoint = None;
        for (i, e1) in inside.iter().enumerate() {
            for e2 in &inside[i + 1..] {
                match e1.shared(e2) {
                    1 => return Ok(vec![two_edge_path(e1, e2)]),
                    0 if disjoint.is_none() => disjoint = Some((*e1, *e2)),
                    _ => {}
                }
            }
        }
        return disjoint
            .map(|(e1, e2)| vec![edge_path(&e1), edge_path(&e2)])
            .ok_or_else(|| not_found("two edges meeting in at most one vertex"));
    }
    let mut budget = STRUCTURE_BUDGET;
    disjoint_edges(&inside, 2 * q, &mut budget)
        .map(|es| es.iter().map(edge_path).collect())
        .ok_or_else(|| not_found("2q disjoint edges"))
}

/// `b1 b2 x b3 b4` with both pairs in the link of `x` inside `pool`.
pub fn v0_piece(h: &ThreeGraph, x: Vertex, pool: &VertexSet) -> Option<LoosePath> {
    let mut pairs = Vec::new();
    for p in pool.iter() {
        pairs.extend(h.link_iter_in(x, p, pool).filter(|&y| y > p).map(|y| (p, y)));
    }
    for (i, &(b1, b2)) in pairs.iter().enumerate() {
        if let Some(&(b3, b4)) = pairs[i + 1..]
            .iter()
            .find(|&&(c, d)| c != b1 && c != b2 && d != b1 && d != b2)
        {
            return Some(LoosePath::new(vec![b1, b2, x, b3, b4]));
        }
    }
    None
}

/// Chains the `B'` structure and one piece per `V0` vertex into a single
/// path using connectors. Returns the empty path when there is nothing to
/// cover.
pub fn build_cover_path(
    h: &ThreeGraph,
    cls: &Classification,
    structure: &[LoosePath],
) -> Result<LoosePath, StageError> {
    let n = h.n();
    let mut used = VertexSet::new(n);
    let mut pieces: Vec<LoosePath> = structure.to_vec();
    for p in &pieces {
        for &v in &p.seq {
            used.insert(v);
        }
    }
    for x in cls.v0.iter() {
        let pool = cls.b_prime.difference(&used);
        let piece = v0_piece(h, x, &pool).ok_or(StageError::NoV0Piece(x))?;
        for &v in &piece.seq {
            used.insert(v);
        }
        pieces.push(piece);
    }
    let mut pieces = pieces.into_iter();
    let Some(mut path) = pieces.next() else {
        return Ok(LoosePath::default());
    };
    for next in pieces {
        let u = path.last().expect("pieces are nonempty");
        let v = next.first().expect("pieces are nonempty");
        let c = connect_pair(h, cls, u, v, &used)?;
        for x in [c.a, c.b1, c.b2] {
            used.insert(x);
        }
        path.seq.extend([c.b1, c.a, c.b2]);
        path.seq.extend_from_slice(&next.seq);
    }
    let report = check_cover_path(h, cls, &path);
    match report.first_violation() {
        None => Ok(path),
        Some(why) => Err(StageError::CoverPath(why)),
    }
}

/// Independent check of the four requirements on the cover path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverPathCheck {
    pub is_path: bool,
    pub covers_v0: bool,
    pub len: usize,
    pub len_bound: f64,
    pub b_rest: usize,
    pub a_rest: usize,
    pub ends_in_b_prime: bool,
}

impl CoverPathCheck {
    pub fn first_violation(&self) -> Option<String> {
        if !self.is_path {
            Some("not a loose path".into())
        } else if !self.covers_v0 {
            Some("misses a vertex of V0".into())
        } else if self.len as f64 > self.len_bound {
            Some(format!("{} vertices exceed (eps1/4)|B| = {:.2}", self.len, self.len_bound))
        } else if self.b_rest + 1 > 3 * self.a_rest {
            Some(format!(
                "|B' \\ V(P)| = {} exceeds 3|A' \\ V(P)| - 1 = {}",
                self.b_rest,
                (3 * self.a_rest) as i64 - 1
            ))
        } else if !self.ends_in_b_prime {
            Some("an end lies outside B'".into())
        } else {
            None
        }
    }

    pub fn holds(&self) -> bool {
        self.first_violation().is_none()
    }
}

pub fn check_cover_path(h: &ThreeGraph, cls: &Classification, p: &LoosePath) -> CoverPathCheck {
    let on_path = VertexSet::from_slice(h.n(), &p.seq);
    let ends = [p.first(), p.last()];
    CoverPathCheck {
        is_path: !p.is_empty() && check_path(h, &p.seq).is_ok(),
        covers_v0: cls.v0.is_subset(&on_path),
        len: p.len(),
        len_bound: cls.eps1 / 4.0 * cls.b.len() as f64,
        b_rest: cls.b_prime.difference(&on_path).len(),
        a_rest: cls.a_prime.difference(&on_path).len(),
        ends_in_b_prime: ends.iter().all(|e| e.is_some_and(|v| cls.b_prime.contains(v))),
    }
}
