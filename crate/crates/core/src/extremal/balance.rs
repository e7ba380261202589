//! Extending the cover path until `|B'| = 3|A'| - 1` outside it, then capping
//! both ends with `ABB` edges.

use serde::Serialize;

use super::classify::Classification;
use super::StageError;
use crate::bitset::VertexSet;
use crate::hypergraph::ThreeGraph;
use crate::loose::LoosePath;
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Balanced {
    /// Runs from `x0` to `x1`.
    pub q: LoosePath,
    pub x0: Vertex,
    pub x1: Vertex,
    /// `(A' \ V(Q)) ∪ {x0, x1}`.
    pub a1: VertexSet,
    /// `B' \ V(Q)`.
    pub b1: VertexSet,
    /// `3|A' \ V(P)| - |B' \ V(P)|` before extending.
    pub l: i64,
    pub extensions: usize,
    /// The cover path was empty and a single `B'` vertex was used instead.
    pub seeded: bool,
}

/// The `B'` vertex with the most edges into `A' × B'`.
fn seed_vertex(h: &ThreeGraph, cls: &Classification) -> Option<Vertex> {
    cls.b_prime
        .iter()
        .max_by_key(|&u| (h.deg_cross_unchecked(u, &cls.a_prime, &cls.b_prime), std::cmp::Reverse(u)))
}

/// Some edge `{u, s, t}` with `s ∈ first`, `t ∈ second`, scanning `first`
/// in increasing order.
fn edge_from(h: &ThreeGraph, u: Vertex, first: &VertexSet, second: &VertexSet) -> Option<(Vertex, Vertex)> {
    first
        .iter()
        .find_map(|s| h.link_iter_in(u, s, second).next().map(|t| (s, t)))
}

pub fn balance_and_cap(h: &ThreeGraph, cls: &Classification, p: &LoosePath) -> Result<Balanced, StageError> {
    let seeded = p.is_empty();
    let mut seq = if seeded {
        vec![seed_vertex(h, cls).ok_or(StageError::EmptyBPrime)?]
    } else {
        p.seq.clone()
    };
    let on_path = VertexSet::from_slice(h.n(), &seq);
    let mut free_a = cls.a_prime.difference(&on_path);
    let mut free_b = cls.b_prime.difference(&on_path);
    let l = 3 * free_a.len() as i64 - free_b.len() as i64;
    if l % 2 == 0 {
        return Err(StageError::Parity(l));
    }
    if l < 1 {
        return Err(StageError::Unbalanced(l));
    }

    let extensions = ((l - 1) / 2) as usize;
    for _ in 0..extensions {
        let u = *seq.last().expect("path is nonempty");
        let (a, b) = edge_from(h, u, &free_a, &free_b).ok_or(StageError::NoExtension(u))?;
        free_a.remove(a);
        free_b.remove(b);
        seq.extend([a, b]);
    }

    let u = *seq.last().expect("path is nonempty");
    let (b, x1) = edge_from(h, u, &free_b, &free_a).ok_or(StageError::NoCap(u))?;
    free_b.remove(b);
    free_a.remove(x1);
    seq.extend([b, x1]);
    let u = seq[0];
    let (b, x0) = edge_from(h, u, &free_b, &free_a).ok_or(StageError::NoCap(u))?;
    free_b.remove(b);
    free_a.remove(x0);
    seq.splice(0..0, [x0, b]);

    let bound = 3.0 * cls.eps1 / 4.0 * cls.b.len() as f64 + 4.0;
    if seq.len() as f64 > bound {
        return Err(StageError::TooLong { len: seq.len(), bound });
    }
    let mut a1 = free_a;
    a1.insert(x0);
    a1.insert(x1);
    Ok(Balanced {
        q: LoosePath::new(seq),
        x0,
        x1,
        a1,
        b1: free_b,
        l,
        extensions,
        seeded,
    })
}
