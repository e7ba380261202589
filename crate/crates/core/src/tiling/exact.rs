//! Branch and bound for maximum `Y`-tilings and for the largest `Y`-free
//! graph on `m` vertices.

use serde::Serialize;

use crate::hypergraph::{binom2, ThreeGraph};
use crate::tiling::{greedy_max_y_tiling, YCopy, YTiling};
use crate::Vertex;

#[derive(Debug, Clone, Serialize)]
pub struct ExactTiling {
    pub tiling: YTiling,
    /// The search tree closed within budget, so the tiling is maximum.
    pub optimal: bool,
    pub nodes: u64,
}

/// 4-sets spanning at least two edges, as bitmasks.
fn y_quads(h: &ThreeGraph) -> Vec<u128> {
    let n = h.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let abc = h.has_edge(a, b, c) as u8;
                for d in c + 1..n {
                    let e = abc + h.has_edge(a, b, d) as u8 + h.has_edge(a, c, d) as u8 + h.has_edge(b, c, d) as u8;
                    if e >= 2 {
                        out.push(1 << a | 1 << b | 1 << c | 1 << d);
                    }
                }
            }
        }
    }
    out
}

/// Size of a greedy hitting set of `quads`; disjoint quads need distinct
/// hitting vertices, so this bounds any packing.
fn hitting_bound(quads: &[u128]) -> usize {
    let mut left: Vec<u128> = quads.to_vec();
    let mut picked = 0;
    while !left.is_empty() {
        let mut count = [0u32; 128];
        for q in &left {
            let mut m = *q;
            while m != 0 {
                count[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
        }
        let v = (0..128).max_by_key(|&v| (count[v], std::cmp::Reverse(v))).expect("nonempty");
        left.retain(|q| q >> v & 1 == 0);
        picked += 1;
    }
    picked
}

struct Bnb {
    best: Vec<u128>,
    cur: Vec<u128>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Bnb {
    fn go(&mut self, quads: &[u128]) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if self.cur.len() > self.best.len() {
            self.best = self.cur.clone();
        }
        if quads.is_empty() {
            return;
        }
        let union = quads.iter().fold(0u128, |a, q| a | q);
        let by_size = union.count_ones() as usize / 4;
        if self.cur.len() + by_size <= self.best.len() {
            return;
        }
        if self.cur.len() + hitting_bound(quads) <= self.best.len() {
            return;
        }
        let v = union.trailing_zeros();
        for &q in quads.iter().filter(|q| *q >> v & 1 == 1) {
            let rest: Vec<u128> = quads.iter().copied().filter(|r| r & q == 0).collect();
            self.cur.push(q);
            self.go(&rest);
            self.cur.pop();
            if self.exhausted {
                return;
            }
        }
        let rest: Vec<u128> = quads.iter().copied().filter(|r| r >> v & 1 == 0).collect();
        self.go(&rest);
    }
}

fn quad_vertices(q: u128) -> [Vertex; 4] {
    let mut out = [0; 4];
    let mut m = q;
    for slot in &mut out {
        *slot = m.trailing_zeros() as usize;
        m &= m - 1;
    }
    out
}

/// Maximum tiling by branch and bound on the lowest-index vertex still in
/// some candidate copy: use it in each copy containing it, or drop it.
/// Graphs above 128 vertices fall back to the greedy tiling, unflagged.
pub fn exact_max_y_tiling(h: &ThreeGraph, budget: u64) -> ExactTiling {
    let greedy = greedy_max_y_tiling(h, 0);
    if h.n() > 128 {
        return ExactTiling {
            tiling: greedy,
            optimal: false,
            nodes: 0,
        };
    }
    let quads = y_quads(h);
    let start: Vec<u128> = greedy
        .copies
        .iter()
        .map(|c| c.0.iter().fold(0u128, |m, &v| m | 1 << v))
        .collect();
    let mut bnb = Bnb {
        best: start,
        cur: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    bnb.go(&quads);
    let tiling = YTiling {
        copies: bnb
            .best
            .iter()
            .map(|&q| YCopy::from_quad(h, quad_vertices(q)).expect("quads span two edges"))
            .collect(),
    };
    ExactTiling {
        tiling,
        optimal: !bnb.exhausted,
        nodes: bnb.nodes,
    }
}

/// The largest edge count of a `Y`-free graph on `m ≤ 11` vertices, a graph
/// attaining it, and whether the search closed within `budget` nodes.
pub fn max_y_free_edges(m: usize, budget: u64) -> (usize, ThreeGraph, bool) {
    assert!((1..=11).contains(&m), "pair masks hold at most 11 vertices");
    let mut pair = [[0usize; 11]; 11];
    let mut k = 0;
    for a in 0..m {
        for b in a + 1..m {
            pair[a][b] = k;
            k += 1;
        }
    }
    let mut triples = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let mask: u64 = 1 << pair[a][b] | 1 << pair[a][c] | 1 << pair[b][c];
                triples.push(((a, b, c), mask));
            }
        }
    }

    struct St<'a> {
        triples: &'a [((Vertex, Vertex, Vertex), u64)],
        best: Vec<usize>,
        cur: Vec<usize>,
        nodes: u64,
        budget: u64,
        exhausted: bool,
    }
    fn go(st: &mut St, i: usize, used: u64, free_pairs: u32) {
        st.nodes += 1;
        if st.nodes > st.budget {
            st.exhausted = true;
            return;
        }
        if st.cur.len() > st.best.len() {
            st.best = st.cur.clone();
        }
        if i == st.triples.len() {
            return;
        }
        let room = ((free_pairs / 3) as usize).min(st.triples.len() - i);
        if st.cur.len() + room <= st.best.len() {
            return;
        }
        let mask = st.triples[i].1;
        if used & mask == 0 {
            st.cur.push(i);
            go(st, i + 1, used | mask, free_pairs - 3);
            st.cur.pop();
            if st.exhausted {
                return;
            }
        }
        go(st, i + 1, used, free_pairs);
    }

    let mut st = St {
        triples: &triples,
        best: Vec::new(),
        cur: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    go(&mut st, 0, 0, binom2(m) as u32);
    let g = ThreeGraph::new(m, st.best.iter().map(|&i| triples[i].0)).expect("valid triples");
    (st.best.len(), g, !st.exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::is_y_free;

    #[test]
    fn complete_graph_tiles_perfectly() {
        let r = exact_max_y_tiling(&ThreeGraph::complete(8), 1 << 20);
        assert!(r.optimal);
        assert_eq!(r.tiling.len(), 2);
        r.tiling.validate(&ThreeGraph::complete(8)).unwrap();
    }

    #[test]
    fn small_y_free_maxima() {
        let expect = [(3, 1), (4, 1), (5, 2), (6, 4), (7, 7)];
        for (m, e) in expect {
            let (best, g, optimal) = max_y_free_edges(m, 1 << 24);
            assert!(optimal);
            assert_eq!(best, e, "m = {m}");
            assert!(is_y_free(&g));
        }
    }
}
