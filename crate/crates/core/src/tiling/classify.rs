//! Classification of the bipartite link of a vertex between two 4-vertex
//! members of a tiling.
//!
//! By König's theorem a bipartite graph has a matching of size three or a
//! vertex cover of size two. With at least seven edges a cover of size two
//! cannot be a single vertex, and a cover with one vertex per side covers at
//! most `4 + 4 - 1 = 7` edges, so the classes below partition all 2^16
//! graphs.

use serde::Serialize;

use crate::hypergraph::ThreeGraph;
use crate::matching::{konig_cover, max_matching};
use crate::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LinkClassKind {
    /// At most six edges.
    Le6,
    /// Exactly seven edges, covered by one vertex on each side.
    Seven1,
    /// At least seven edges, covered by two vertices on one side.
    Ge7Two,
    /// At least seven edges and a matching of size three.
    Ge7Three,
}

/// The König certificate of the link: a 3-matching when one exists,
/// otherwise a minimum cover (at most two vertices) split by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LinkWitness {
    Matching([(Vertex, Vertex); 3]),
    Cover { left: Vec<Vertex>, right: Vec<Vertex> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkClass {
    pub kind: LinkClassKind,
    pub edges: u32,
    pub witness: LinkWitness,
}

/// Bit `4 * a + b` of the mask is the pair (left `a`, right `b`).
#[inline]
pub fn mask_has(mask: u16, a: usize, b: usize) -> bool {
    mask >> (4 * a + b) & 1 == 1
}

/// Classifies a 4×4 bipartite graph given as a 16-bit mask; witness
/// vertices are side-local indices in `0..4`.
pub fn classify_mask(mask: u16) -> LinkClass {
    let adj: Vec<Vec<usize>> = (0..4)
        .map(|a| (0..4).filter(|&b| mask_has(mask, a, b)).collect())
        .collect();
    let m = max_matching(&adj, 4);
    let edges = mask.count_ones();
    let witness = if m.size() >= 3 {
        let p = m.pairs();
        LinkWitness::Matching([p[0], p[1], p[2]])
    } else {
        let (left, right) = konig_cover(&adj, 4, &m);
        LinkWitness::Cover { left, right }
    };
    let kind = match (&witness, edges) {
        (_, 0..=6) => LinkClassKind::Le6,
        (LinkWitness::Matching(_), _) => LinkClassKind::Ge7Three,
        (LinkWitness::Cover { left, right }, _) if left.len() == 1 && right.len() == 1 => LinkClassKind::Seven1,
        (LinkWitness::Cover { .. }, _) => LinkClassKind::Ge7Two,
    };
    LinkClass { kind, edges, witness }
}

/// The bipartite link of `u` between `vi` and `vj` as a mask.
pub fn link_mask(h: &ThreeGraph, u: Vertex, vi: &[Vertex; 4], vj: &[Vertex; 4]) -> u16 {
    let mut mask = 0u16;
    for (a, &x) in vi.iter().enumerate() {
        for (b, &y) in vj.iter().enumerate() {
            if h.has_edge(u, x, y) {
                mask |= 1 << (4 * a + b);
            }
        }
    }
    mask
}

/// Classifies `L(u)` between the 4-sets `vi` and `vj`, with the witness in
/// graph vertex labels. Returns `None` when the parts are malformed.
pub fn classify_link(h: &ThreeGraph, u: Vertex, vi: &[Vertex; 4], vj: &[Vertex; 4]) -> Option<LinkClass> {
    let all: Vec<Vertex> = vi.iter().chain(vj).copied().collect();
    let distinct = (0..8).all(|i| (i + 1..8).all(|j| all[i] != all[j]));
    if !distinct || all.contains(&u) || all.iter().any(|&v| v >= h.n()) || u >= h.n() {
        return None;
    }
    let mut c = classify_mask(link_mask(h, u, vi, vj));
    c.witness = match c.witness {
        LinkWitness::Matching(p) => LinkWitness::Matching(p.map(|(a, b)| (vi[a], vj[b]))),
        LinkWitness::Cover { left, right } => LinkWitness::Cover {
            left: left.into_iter().map(|a| vi[a]).collect(),
            right: right.into_iter().map(|b| vj[b]).collect(),
        },
    };
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask_of(pairs: &[(usize, usize)]) -> u16 {
        pairs.iter().fold(0, |m, &(a, b)| m | 1 << (4 * a + b))
    }

    #[test]
    fn complete_link() {
        let c = classify_mask(u16::MAX);
        assert_eq!(c.kind, LinkClassKind::Ge7Three);
        assert!(matches!(c.witness, LinkWitness::Matching(_)));
    }

    #[test]
    fn cross_star_is_seven_one() {
        let mut pairs: Vec<(usize, usize)> = (0..4).map(|b| (1, b)).collect();
        pairs.extend((0..4).map(|a| (a, 2)));
        let c = classify_mask(mask_of(&pairs));
        assert_eq!(c.kind, LinkClassKind::Seven1);
        assert_eq!(c.edges, 7);
        assert_eq!(c.witness, LinkWitness::Cover { left: vec![1], right: vec![2] });
    }

    #[test]
    fn double_star_one_side() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|b| [(0, b), (3, b)]).collect();
        let c = classify_mask(mask_of(&pairs));
        assert_eq!(c.kind, LinkClassKind::Ge7Two);
        assert_eq!(c.witness, LinkWitness::Cover { left: vec![0, 3], right: vec![] });
    }

    #[test]
    fn graph_labels() {
        let h = ThreeGraph::complete(9);
        let c = classify_link(&h, 8, &[0, 1, 2, 3], &[4, 5, 6, 7]).unwrap();
        assert_eq!(c.edges, 16);
        assert!(classify_link(&h, 0, &[0, 1, 2, 3], &[4, 5, 6, 7]).is_none());
        assert!(classify_link(&h, 8, &[0, 1, 2, 3], &[3, 5, 6, 7]).is_none());
    }
}
