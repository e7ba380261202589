//! Splitting `V` into `A'`, `B'` and `V0` by degree into `B`.

use serde::Serialize;

use super::partition::ExtremalPartition;
use crate::bitset::VertexSet;
use crate::hypergraph::{binom2, ThreeGraph};

/// The size bounds every classification should meet in the extremal regime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeCheck {
    pub a_minus_a_prime: usize,
    pub b_minus_b_prime: usize,
    pub a_prime_minus_a: usize,
    pub b_prime_minus_b: usize,
    pub v0: usize,
    /// `(ε1/64)|B|`, the bound on the four differences.
    pub diff_bound: f64,
    /// `(ε1/32)|B|`.
    pub v0_bound: f64,
}

impl SizeCheck {
    pub fn holds(&self) -> bool {
        let b = self.diff_bound;
        [
            self.a_minus_a_prime,
            self.b_minus_b_prime,
            self.a_prime_minus_a,
            self.b_prime_minus_b,
        ]
        .iter()
        .all(|&d| d as f64 <= b)
            && self.v0 as f64 <= self.v0_bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub a: VertexSet,
    pub b: VertexSet,
    pub a_prime: VertexSet,
    pub b_prime: VertexSet,
    pub v0: VertexSet,
    pub eps1: f64,
    /// `deg(v, B)` for every vertex.
    pub deg_b: Vec<usize>,
    pub sizes: SizeCheck,
}

impl Classification {
    /// `|A ∩ B'|`.
    pub fn q(&self) -> usize {
        self.a.intersection_len(&self.b_prime)
    }

    /// `A ∩ B' ≠ ∅ ⇒ B ⊆ B'` and `B ∩ A' ≠ ∅ ⇒ A ⊆ A'`, which a globally
    /// minimal `e(B)` guarantees.
    pub fn minimality_consistent(&self) -> bool {
        let first = self.a.is_disjoint(&self.b_prime) || self.b.is_subset(&self.b_prime);
        let second = self.b.is_disjoint(&self.a_prime) || self.a.is_subset(&self.a_prime);
        first && second
    }
}

/// `A' = {deg(v,B) ≥ (1-ε1)C(|B|,2)}`, `B' = {deg(v,B) ≤ ε1 C(|B|,2)}`.
///
/// For `ε1 ≥ 1/2` the two ranges overlap; a vertex in both goes to `A'` when
/// `deg(v,B) ≥ C(|B|,2)/2` and to `B'` otherwise, so `V0` is empty.
pub fn classify_vertices(h: &ThreeGraph, part: &ExtremalPartition, eps1: f64) -> Classification {
    let n = h.n();
    let c = binom2(part.b.len()) as f64;
    let deg_b: Vec<usize> = (0..n).map(|v| h.deg_into(v, &part.b)).collect();
    let mut a_prime = VertexSet::new(n);
    let mut b_prime = VertexSet::new(n);
    let mut v0 = VertexSet::new(n);
    for (v, &d) in deg_b.iter().enumerate() {
        let d = d as f64;
        let high = d >= (1.0 - eps1) * c;
        let low = d <= eps1 * c;
        match (high, low) {
            (true, true) if d >= c / 2.0 => a_prime.insert(v),
            (true, true) => b_prime.insert(v),
            (true, false) => a_prime.insert(v),
            (false, true) => b_prime.insert(v),
            (false, false) => v0.insert(v),
        };
    }
    let blen = part.b.len() as f64;
    let sizes = SizeCheck {
        a_minus_a_prime: part.a.difference(&a_prime).len(),
        b_minus_b_prime: part.b.difference(&b_prime).len(),
        a_prime_minus_a: a_prime.difference(&part.a).len(),
        b_prime_minus_b: b_prime.difference(&part.b).len(),
        v0: v0.len(),
        diff_bound: eps1 / 64.0 * blen,
        v0_bound: eps1 / 32.0 * blen,
    };
    Classification {
        a: part.a.clone(),
        b: part.b.clone(),
        a_prime,
        b_prime,
        v0,
        eps1,
        deg_b,
        sizes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_h1;
    use crate::extremal::partition::find_extremal_partition;

    #[test]
    fn h1_classifies_exactly() {
        let g = build_h1(18).unwrap();
        let p = find_extremal_partition(&g.graph, 0.0005).unwrap();
        let cls = classify_vertices(&g.graph, &p, 0.3);
        assert_eq!(cls.a_prime, g.a);
        assert_eq!(cls.b_prime, g.b);
        assert!(cls.v0.is_empty());
        // the planted independent part has one vertex more than ⌊3n/4⌋
        assert_eq!(cls.q(), 1);
        assert!(cls.minimality_consistent());
    }

    #[test]
    fn complete_graph_is_all_a_prime() {
        let h = ThreeGraph::complete(8);
        let b = VertexSet::range(8, 0, 6);
        let part = ExtremalPartition {
            a: b.complement(),
            e_b: h.e_inside(&b),
            b,
            locally_minimal: true,
            swaps: 0,
        };
        // B-vertices see C(|B|-1, 2) = 10 of the C(|B|, 2) = 15 pairs
        for eps1 in [0.4, 0.7] {
            let cls = classify_vertices(&h, &part, eps1);
            assert_eq!(cls.a_prime.len(), 8);
            assert!(cls.b_prime.is_empty());
        }
    }
}
