//! Diagnostics of a tiling: classes of the bipartite links of uncovered
//! vertices, the centers graph, the set `C`, and the extracted candidate sets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::graph::{EdgeList, Graph};
use crate::hypergraph::ThreeGraph;
use crate::params::Parameters;
use crate::tiling::classify::{classify_mask, link_mask, LinkClassKind, LinkWitness};
use crate::tiling::{is_y_free, TilingError, YTiling};
use crate::Vertex;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub le6: usize,
    pub seven1: usize,
    pub ge7_two: usize,
    pub ge7_three: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TilingAnalysis {
    pub tiling: YTiling,
    pub uncovered: VertexSet,
    pub centers_graph: EdgeList,
    pub c: VertexSet,
    pub i_c: Vec<usize>,
    pub a_candidate: VertexSet,
    pub b_candidate: VertexSet,
    /// Class counts over all `(u, {i, j})` with `u` uncovered.
    pub class_counts: ClassCounts,
    /// Edges with exactly `k` vertices covered by the tiling, `k = 0..=3`.
    pub layers: [usize; 4],
    /// Covered vertices `v` with `deg(v, U) ≥ 4|U|`.
    pub heavy_covered: usize,
    pub e_inside_a: usize,
    pub a_candidate_y_free: bool,
    pub e_inside_b: usize,
    /// `|U| ≤ 2^19 / gamma`.
    pub small_leftover: bool,
    /// `e(B_candidate) ≤ 2^10 gamma n^3`.
    pub extremal_branch: bool,
}

pub fn analyze_tiling(h: &ThreeGraph, tiling: &YTiling, params: &Parameters) -> Result<TilingAnalysis, TilingError> {
    tiling.validate(h)?;
    let n = h.n();
    let members: Vec<[Vertex; 4]> = tiling.copies.iter().map(|c| c.0).collect();
    let covered = tiling.covered(n);
    let uncovered = covered.complement();
    let u: Vec<Vertex> = uncovered.to_vec();

    let mut layers = [0usize; 4];
    for t in h.edges() {
        layers[t.vertices().iter().filter(|&&v| covered.contains(v)).count()] += 1;
    }
    let heavy_covered = covered
        .iter()
        .filter(|&v| h.deg_into(v, &uncovered) >= 4 * u.len())
        .count();

    let mut counts = ClassCounts::default();
    let mut witnesses: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            for &x in &u {
                let c = classify_mask(link_mask(h, x, &members[i], &members[j]));
                match c.kind {
                    LinkClassKind::Le6 => counts.le6 += 1,
                    LinkClassKind::Ge7Two => counts.ge7_two += 1,
                    LinkClassKind::Ge7Three => counts.ge7_three += 1,
                    LinkClassKind::Seven1 => {
                        counts.seven1 += 1;
                        if let LinkWitness::Cover { left, right } = c.witness {
                            let (p, q) = (members[i][left[0]], members[j][right[0]]);
                            *witnesses.entry((p.min(q), p.max(q))).or_default() += 1;
                        }
                    }
                }
            }
        }
    }

    let mut g = Graph::on(n, covered.clone());
    for (&(p, q), &k) in &witnesses {
        if k >= params.center_witnesses {
            g.add_edge(p, q);
        }
    }
    let mut c = VertexSet::new(n);
    for v in &covered {
        if g.degree(v) >= params.center_degree
            && g.neighbors(v).iter().any(|w| g.degree(w) >= params.center_neighbor_degree)
        {
            c.insert(v);
        }
    }
    let i_c: Vec<usize> = (0..members.len())
        .filter(|&i| members[i].iter().any(|&v| c.contains(v)))
        .collect();
    let mut a_candidate = uncovered.clone();
    for &i in &i_c {
        for v in members[i] {
            if !c.contains(v) {
                a_candidate.insert(v);
            }
        }
    }

    let target = 3 * n / 4;
    let by_degree = |s: &VertexSet| {
        let mut v = s.to_vec();
        v.sort_by_key(|&x| (h.degree(x), x));
        v
    };
    let mut b: Vec<Vertex> = by_degree(&c.complement());
    b.extend(by_degree(&c));
    let b_candidate = VertexSet::from_slice(n, &b[..target]);

    let (e_inside_a, a_candidate_y_free) = if a_candidate.is_empty() {
        (0, true)
    } else {
        let (ga, _) = h.induced(&a_candidate).expect("nonempty subset");
        (ga.num_edges(), is_y_free(&ga))
    };
    let e_inside_b = h.e_inside(&b_candidate);
    let gamma = params.gamma;
    Ok(TilingAnalysis {
        tiling: tiling.clone(),
        small_leftover: (u.len() as f64) <= (1u64 << 19) as f64 / gamma,
        extremal_branch: (e_inside_b as f64) <= 1024.0 * gamma * (n as f64).powi(3),
        uncovered,
        centers_graph: g.to_edge_list(),
        c,
        i_c,
        a_candidate,
        b_candidate,
        class_counts: counts,
        layers,
        heavy_covered,
        e_inside_a,
        a_candidate_y_free,
        e_inside_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::YCopy;

    #[test]
    fn perfect_tiling_of_complete_graph() {
        let k8 = ThreeGraph::complete(8);
        let t = YTiling {
            copies: vec![YCopy([0, 1, 2, 3]), YCopy([4, 5, 6, 7])],
        };
        let a = analyze_tiling(&k8, &t, &Parameters::default()).unwrap();
        assert!(a.uncovered.is_empty());
        assert!(a.centers_graph.edges.is_empty());
        assert!(a.c.is_empty());
        assert_eq!(a.b_candidate.len(), 6);
        assert_eq!(a.layers, [0, 0, 0, 56]);
    }

    #[test]
    fn rejects_invalid_tiling() {
        let g = ThreeGraph::empty(8);
        let t = YTiling {
            copies: vec![YCopy([0, 1, 2, 3])],
        };
        assert!(analyze_tiling(&g, &t, &Parameters::default()).is_err());
    }
}
