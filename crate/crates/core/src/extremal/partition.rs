//! Finding a partition `V = A ∪ B` with `|B| = ⌊3n/4⌋` and few edges inside `B`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::hypergraph::ThreeGraph;
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalPartition {
    pub a: VertexSet,
    pub b: VertexSet,
    pub e_b: usize,
    /// No single swap `u ∈ A`, `v ∈ B` lowers `e_b`.
    pub locally_minimal: bool,
    pub swaps: usize,
}

pub fn b_size(n: usize) -> usize {
    3 * n / 4
}

/// The `⌊3n/4⌋` vertices of smallest degree, ties broken by index.
pub fn lowest_degree_set(h: &ThreeGraph) -> VertexSet {
    let n = h.n();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (h.degree(v), v));
    VertexSet::from_slice(n, &order[..b_size(n)])
}

/// Steepest-descent swap search on `e(B)` from `start`.
pub fn local_search(h: &ThreeGraph, start: VertexSet) -> ExtremalPartition {
    let n = h.n();
    let mut b = start;
    let mut e_b = h.e_inside(&b) as i64;
    let mut swaps = 0;
    loop {
        let a = b.complement();
        let deg: Vec<i64> = (0..n).map(|v| h.deg_into(v, &b) as i64).collect();
        let mut best: Option<(i64, Vertex, Vertex)> = None;
        for u in a.iter() {
            for v in b.iter() {
                // e(B - v + u) - e(B)
                let delta = deg[u] - h.link_count_in(u, v, &b) as i64 - deg[v];
                if delta < 0 && best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, u, v));
                }
            }
        }
        match best {
            Some((delta, u, v)) => {
                b.remove(v);
                b.insert(u);
                e_b += delta;
                swaps += 1;
            }
            None => {
                debug_assert_eq!(e_b as usize, h.e_inside(&b));
                return ExtremalPartition {
                    a,
                    b,
                    e_b: e_b as usize,
                    locally_minimal: true,
                    swaps,
                };
            }
        }
    }
}

/// Local search from the lowest-degree start; `None` unless `e(B) ≤ βn³`.
pub fn find_extremal_partition(h: &ThreeGraph, beta: f64) -> Option<ExtremalPartition> {
    let part = local_search(h, lowest_degree_set(h));
    within_budget(h.n(), &part, beta).then_some(part)
}

pub(crate) fn within_budget(n: usize, part: &ExtremalPartition, beta: f64) -> bool {
    part.e_b as f64 <= beta * (n as f64).powi(3)
}

pub fn is_beta_extremal(h: &ThreeGraph, beta: f64) -> bool {
    find_extremal_partition(h, beta).is_some()
}

/// Swaps `k` random pairs across the partition.
pub fn perturb<R: Rng>(b: &VertexSet, k: usize, rng: &mut R) -> VertexSet {
    let mut inside = b.to_vec();
    let mut outside = b.complement().to_vec();
    inside.shuffle(rng);
    outside.shuffle(rng);
    let mut out = b.clone();
    for (&v, &u) in inside.iter().zip(&outside).take(k) {
        out.remove(v);
        out.insert(u);
    }
    out
}

/// Exact minimum of `e(B)` over all `⌊3n/4⌋`-subsets; `None` for `n > 20`.
pub fn exact_min_partition(h: &ThreeGraph) -> Option<ExtremalPartition> {
    let n = h.n();
    if n > 20 {
        return None;
    }
    let k = b_size(n) as u32;
    let mut best: Option<(usize, u32)> = None;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != k {
            continue;
        }
        let e = h
            .edges()
            .iter()
            .filter(|t| t.vertices().iter().all(|&v| mask >> v & 1 == 1))
            .count();
        if best.is_none_or(|(be, _)| e < be) {
            best = Some((e, mask));
        }
    }
    best.map(|(e_b, mask)| {
        let b: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let b = VertexSet::from_slice(n, &b);
        ExtremalPartition {
            a: b.complement(),
            b,
            e_b,
            locally_minimal: true,
            swaps: 0,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_h1, build_h1_plus, random_graph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn h1_finds_independent_part() {
        let g = build_h1(18).unwrap();
        let p = find_extremal_partition(&g.graph, 0.0005).unwrap();
        assert_eq!(p.e_b, 0);
        assert!(p.b.is_subset(&g.b));
        assert_eq!(p.b.len(), 13);
    }

    #[test]
    fn complete_graph_is_not_extremal() {
        assert!(find_extremal_partition(&ThreeGraph::complete(8), 0.001).is_none());
    }

    #[test]
    fn local_minimum_has_no_improving_swap() {
        for seed in 0..5 {
            let h = random_graph(12, 0.4, seed).unwrap();
            let p = local_search(&h, lowest_degree_set(&h));
            assert_eq!(p.e_b, h.e_inside(&p.b));
            for u in p.a.iter() {
                for v in p.b.iter() {
                    let mut b = p.b.clone();
                    b.remove(v);
                    b.insert(u);
                    assert!(h.e_inside(&b) >= p.e_b);
                }
            }
        }
    }

    #[test]
    fn exact_oracle_lower_bounds_local_search() {
        for seed in 0..10 {
            let h = random_graph(10, 0.5, seed).unwrap();
            let exact = exact_min_partition(&h).unwrap();
            let local = local_search(&h, lowest_degree_set(&h));
            assert!(exact.e_b <= local.e_b);
            assert_eq!(exact.e_b, h.e_inside(&exact.b));
        }
        let g = build_h1_plus(8).unwrap();
        assert_eq!(exact_min_partition(&g.graph).unwrap().e_b, 0);
    }

    #[test]
    fn perturb_keeps_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = VertexSet::range(20, 0, 15);
        let p = perturb(&b, 3, &mut rng);
        assert_eq!(p.len(), 15);
        assert_eq!(p.difference(&b).len(), 3);
    }
}
