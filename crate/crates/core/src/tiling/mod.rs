//! Copies of `Y` (two edges sharing a pair) and vertex-disjoint tilings by
//! them.
//!
//! A 4-set spans a copy of `Y` iff it contains at least two edges, since any
//! two edges inside four vertices share a pair. A graph is `Y`-free iff every
//! pair has codegree at most one.

mod analysis;
mod augment;
mod classify;
mod exact;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::hypergraph::{binom2, ThreeGraph};
use crate::Vertex;

pub use analysis::{analyze_tiling, ClassCounts, TilingAnalysis};
pub use augment::{augment_to_fixpoint, find_forbidden_configuration, Exchange, Improvement};
pub use classify::{classify_link, classify_mask, LinkClass, LinkClassKind, LinkWitness};
pub use exact::{exact_max_y_tiling, max_y_free_edges, ExactTiling};

/// A copy of `Y` with edges `{v0, v1, v2}` and `{v1, v2, v3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YCopy(pub [Vertex; 4]);

impl YCopy {
    pub fn vertices(&self) -> [Vertex; 4] {
        self.0
    }

    pub fn is_in(&self, h: &ThreeGraph) -> bool {
        let [a, b, c, d] = self.0;
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        distinct && [a, b, c, d].iter().all(|&v| v < h.n()) && h.has_edge(a, b, c) && h.has_edge(b, c, d)
    }

    /// Orients a 4-set spanning at least two edges as a copy of `Y`.
    pub fn from_quad(h: &ThreeGraph, q: [Vertex; 4]) -> Option<YCopy> {
        let omit = |i: usize| -> [Vertex; 3] {
            let mut t = [0; 3];
            let mut k = 0;
            for (j, &v) in q.iter().enumerate() {
                if j != i {
                    t[k] = v;
                    k += 1;
                }
            }
            t
        };
        let mut present = (0..4).filter(|&i| {
            let t = omit(i);
            h.has_edge(t[0], t[1], t[2])
        });
        let i = present.next()?;
        let j = present.next()?;
        // Edge without q[i] and edge without q[j] share the other two vertices.
        let shared: Vec<Vertex> = (0..4).filter(|&k| k != i && k != j).map(|k| q[k]).collect();
        Some(YCopy([q[j], shared[0], shared[1], q[i]]))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct YTiling {
    pub copies: Vec<YCopy>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("copy {0} is not a Y in the graph")]
    NotACopy(usize),
    #[error("vertex {0} is used by two copies")]
    Overlap(Vertex),
}

impl YTiling {
    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn covered(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for c in &self.copies {
            for v in c.0 {
                s.insert(v);
            }
        }
        s
    }

    pub fn uncovered(&self, n: usize) -> VertexSet {
        self.covered(n).complement()
    }

    pub fn validate(&self, h: &ThreeGraph) -> Result<(), TilingError> {
        let mut seen = VertexSet::new(h.n());
        for (i, c) in self.copies.iter().enumerate() {
            if !c.is_in(h) {
                return Err(TilingError::NotACopy(i));
            }
            for v in c.0 {
                if !seen.insert(v) {
                    return Err(TilingError::Overlap(v));
                }
            }
        }
        Ok(())
    }
}

/// Some copy of `Y` inside `set`, found through a pair of codegree at least
/// two within `set`.
pub fn find_y_within(h: &ThreeGraph, set: &VertexSet) -> Option<YCopy> {
    for p in set {
        for q in set.iter().filter(|&q| q > p) {
            let mut w = h.link_iter_in(p, q, set);
            if let (Some(a), Some(b)) = (w.next(), w.next()) {
                return Some(YCopy([a, p, q, b]));
            }
        }
    }
    None
}

/// Some copy of `Y` inside `set` that contains `v`.
pub fn find_y_through(h: &ThreeGraph, v: Vertex, set: &VertexSet) -> Option<YCopy> {
    // `v` in the shared pair: a pair {v, x} with two completions.
    for x in set.iter().filter(|&x| x != v) {
        let mut w = h.link_iter_in(v, x, set);
        if let (Some(a), Some(b)) = (w.next(), w.next()) {
            return Some(YCopy([a, v, x, b]));
        }
    }
    // `v` as an end: an edge {v, x, y} whose pair {x, y} has another completion.
    for x in set.iter().filter(|&x| x != v) {
        for y in h.link_iter_in(v, x, set).filter(|&y| y > x) {
            if let Some(w) = h.link_iter_in(x, y, set).find(|&w| w != v) {
                return Some(YCopy([v, x, y, w]));
            }
        }
    }
    None
}

/// Direct search for two edges sharing exactly two vertices, scanning the
/// edge list without the pair index.
pub fn find_y_copy(h: &ThreeGraph) -> Option<YCopy> {
    let edges = h.edges();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if e.shared(f) == 2 {
                let ev = e.vertices();
                let fv = f.vertices();
                let end1 = *ev.iter().find(|v| !f.contains(**v)).expect("one private vertex");
                let end2 = *fv.iter().find(|v| !e.contains(**v)).expect("one private vertex");
                let shared: Vec<Vertex> = ev.iter().copied().filter(|v| f.contains(*v)).collect();
                return Some(YCopy([end1, shared[0], shared[1], end2]));
            }
        }
    }
    None
}

pub fn is_y_free(h: &ThreeGraph) -> bool {
    find_y_copy(h).is_none()
}

pub fn max_codegree_le_one(h: &ThreeGraph) -> bool {
    h.max_codegree() <= 1
}

/// `Y`-free graphs on `m` vertices have at most `C(m, 2) / 3` edges; vacuous
/// for graphs containing `Y`.
pub fn y_free_edge_bound_check(h: &ThreeGraph) -> bool {
    !is_y_free(h) || 3 * h.num_edges() as u64 <= binom2(h.n())
}

/// Adds copies inside the uncovered set until none is left, visiting
/// vertices in `order`.
pub fn extend_to_maximal(h: &ThreeGraph, tiling: &mut YTiling, order: &[Vertex]) {
    let mut free = tiling.uncovered(h.n());
    for &v in order {
        if !free.contains(v) {
            continue;
        }
        if let Some(y) = find_y_through(h, v, &free) {
            for x in y.0 {
                free.remove(x);
            }
            tiling.copies.push(y);
        }
    }
}

/// A maximal tiling built greedily over a seeded vertex order, then improved
/// by exchanges until none applies.
pub fn greedy_max_y_tiling(h: &ThreeGraph, seed: u64) -> YTiling {
    let mut order: Vec<Vertex> = (0..h.n()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut tiling = YTiling::default();
    extend_to_maximal(h, &mut tiling, &order);
    augment_to_fixpoint(h, &mut tiling, &order);
    tiling
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fano_plane, random_graph};

    #[test]
    fn y_free_predicates_agree() {
        assert!(is_y_free(&fano_plane()));
        assert!(max_codegree_le_one(&fano_plane()));
        assert!(!is_y_free(&ThreeGraph::complete(6)));
        for seed in 0..200 {
            let g = random_graph(7, 0.08, seed).unwrap();
            assert_eq!(is_y_free(&g), max_codegree_le_one(&g), "seed {seed}");
            if let Some(y) = find_y_copy(&g) {
                assert!(y.is_in(&g));
            }
        }
    }

    #[test]
    fn fano_meets_edge_bound() {
        let f = fano_plane();
        assert_eq!(3 * f.num_edges() as u64, binom2(7));
        assert!(y_free_edge_bound_check(&f));
        assert!(y_free_edge_bound_check(&ThreeGraph::empty(5)));
    }

    #[test]
    fn quad_orientation() {
        let g = ThreeGraph::new(5, [(0, 1, 2), (1, 2, 4)]).unwrap();
        let y = YCopy::from_quad(&g, [0, 1, 2, 4]).unwrap();
        assert!(y.is_in(&g));
        assert!(YCopy::from_quad(&g, [0, 1, 3, 4]).is_none());
    }

    #[test]
    fn greedy_is_valid_and_maximal() {
        for seed in 0..20 {
            let g = random_graph(20, 0.2, seed).unwrap();
            let t = greedy_max_y_tiling(&g, seed);
            t.validate(&g).unwrap();
            assert!(find_y_within(&g, &t.uncovered(20)).is_none());
        }
        let k8 = ThreeGraph::complete(8);
        assert_eq!(greedy_max_y_tiling(&k8, 1).len(), 2);
    }
}
