//! Every 3-graph on six vertices, checked three ways.

use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::hypergraph::ThreeGraph;
use crate::loose::verify_loose_hamilton_cycle;
use crate::search::{find_loose_hamilton_cycle, SearchOptions, SearchResult};
use crate::Vertex;

/// The 20 triples of `[0, 6)` in lexicographic order; bit `i` of a mask
/// selects `N6_TRIPLES[i]`.
pub const N6_TRIPLES: [(Vertex, Vertex, Vertex); 20] = {
    let mut out = [(0, 0, 0); 20];
    let mut i = 0;
    let mut a = 0;
    while a < 6 {
        let mut b = a + 1;
        while b < 6 {
            let mut c = b + 1;
            while c < 6 {
                out[i] = (a, b, c);
                i += 1;
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

fn triple_bit(mut t: [Vertex; 3]) -> u32 {
    t.sort_unstable();
    let i = N6_TRIPLES
        .iter()
        .position(|&(a, b, c)| [a, b, c] == t)
        .expect("a triple of [0, 6)");
    1 << i
}

pub fn n6_graph(mask: u32) -> ThreeGraph {
    ThreeGraph::new(6, (0..20).filter(|i| mask >> i & 1 == 1).map(|i| N6_TRIPLES[i])).expect("valid triples")
}

/// Edge sets of all loose Hamilton cycles of `K_6^3`, as masks over
/// [`N6_TRIPLES`], from every vertex ordering.
pub fn loose_cycle_masks_n6() -> Vec<u32> {
    let mut out = Vec::new();
    let mut perm = [0, 1, 2, 3, 4, 5];
    loop {
        let p = perm;
        let mask = triple_bit([p[0], p[1], p[2]]) | triple_bit([p[2], p[3], p[4]]) | triple_bit([p[4], p[5], p[0]]);
        out.push(mask);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DegreeBucket {
    pub min_degree: usize,
    pub hamiltonian: u64,
    pub non_hamiltonian: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct N6ScanReport {
    pub total: u64,
    /// Indexed by minimum vertex degree, `0..=10`.
    pub buckets: Vec<DegreeBucket>,
    /// Least `d` such that every scanned graph with `δ1 ≥ d` is Hamiltonian.
    pub least_forcing_degree: Option<usize>,
    /// Graphs on which the certificate-assisted search, the plain
    /// backtracking search and the cycle-mask test did not all agree.
    pub disagreements: u64,
    pub certificate_refutations: u64,
    pub budget_exceeded: u64,
}

#[derive(Default)]
struct Tally {
    ham: [u64; 11],
    non: [u64; 11],
    disagreements: u64,
    certs: u64,
    budget: u64,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        for d in 0..11 {
            self.ham[d] += o.ham[d];
            self.non[d] += o.non[d];
        }
        self.disagreements += o.disagreements;
        self.certs += o.certs;
        self.budget += o.budget;
        self
    }
}

const SCAN_BUDGET: u64 = 1_000_000;

fn classify_one(mask: u32, cycles: &[u32], t: &mut Tally) {
    let h = n6_graph(mask);
    let with_certs = find_loose_hamilton_cycle(&h, &SearchOptions::default()).expect("n = 6 is valid");
    let plain = find_loose_hamilton_cycle(&h, &SearchOptions::exhaustive(SCAN_BUDGET)).expect("n = 6 is valid");
    let by_mask = cycles.iter().any(|&c| c & mask == c);

    let route = |r: &SearchResult| -> Option<bool> {
        match r {
            SearchResult::Found(c) => Some(verify_loose_hamilton_cycle(&h, c)),
            SearchResult::RefutedExhaustive | SearchResult::RefutedCertificate(_) => Some(false),
            SearchResult::BudgetExceeded(_) => None,
        }
    };
    let a = route(&with_certs.result);
    let b = route(&plain.result);
    if a.is_none() || b.is_none() {
        t.budget += 1;
    }
    if matches!(with_certs.result, SearchResult::RefutedCertificate(_)) {
        t.certs += 1;
    }
    // a Found cycle that fails verification also lands here
    let found_a = matches!(with_certs.result, SearchResult::Found(_));
    let found_b = matches!(plain.result, SearchResult::Found(_));
    if a != Some(by_mask) || b != Some(by_mask) || found_a != by_mask || found_b != by_mask {
        t.disagreements += 1;
    }
    let d = h.min_vertex_degree();
    if by_mask {
        t.ham[d] += 1;
    } else {
        t.non[d] += 1;
    }
}

/// Scans the masks in `range` (a subrange of `0..2^20`).
pub fn n6_scan_range(range: Range<u32>) -> N6ScanReport {
    let cycles = loose_cycle_masks_n6();
    let total = u64::from(range.end - range.start);
    let tally = range
        .into_par_iter()
        .fold(Tally::default, |mut t, mask| {
            classify_one(mask, &cycles, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge);
    let buckets: Vec<DegreeBucket> = (0..11)
        .map(|d| DegreeBucket {
            min_degree: d,
            hamiltonian: tally.ham[d],
            non_hamiltonian: tally.non[d],
        })
        .collect();
    let least_forcing_degree = (0..=11)
        .find(|&d| buckets[d.min(11)..].iter().all(|b| b.non_hamiltonian == 0))
        .filter(|&d| d <= 10);
    N6ScanReport {
        total,
        buckets,
        least_forcing_degree,
        disagreements: tally.disagreements,
        certificate_refutations: tally.certs,
        budget_exceeded: tally.budget,
    }
}

pub fn exhaustive_n6_scan() -> N6ScanReport {
    n6_scan_range(0..1 << 20)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_h1;

    #[test]
    fn triple_table_is_lexicographic() {
        assert_eq!(N6_TRIPLES[0], (0, 1, 2));
        assert_eq!(N6_TRIPLES[19], (3, 4, 5));
        assert!(N6_TRIPLES.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cycle_masks() {
        let masks = loose_cycle_masks_n6();
        // 20 choices of the three junctions times 3! ways to attach the others
        assert_eq!(masks.len(), 120);
        assert!(masks.iter().all(|m| m.count_ones() == 3));
    }

    #[test]
    fn h1_6_is_not_hamiltonian() {
        let g = build_h1(6).unwrap();
        let mask = g
            .graph
            .edges()
            .iter()
            .map(|t| triple_bit(t.vertices()))
            .fold(0, |a, b| a | b);
        assert_eq!(n6_graph(mask), g.graph);
        assert_eq!(g.graph.min_vertex_degree(), 4);
        assert!(!loose_cycle_masks_n6().iter().any(|&c| c & mask == c));
    }

    #[test]
    fn partial_scan_agrees() {
        let r = n6_scan_range((1 << 20) - 4096..1 << 20);
        assert_eq!(r.total, 4096);
        assert_eq!(r.disagreements, 0);
        assert_eq!(r.budget_exceeded, 0);
        assert_eq!(r.buckets[10].hamiltonian, 1);
    }
}
