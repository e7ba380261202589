//! Bipartite maximum matching (augmenting paths) and König vertex covers.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::Vertex;

/// A maximum matching between left indices `[0, adj.len())` and right indices
/// `[0, right)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub left_to_right: Vec<Option<usize>>,
    pub right_to_left: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_to_right.iter().flatten().count()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_to_right
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
            .collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.left_to_right.iter().all(Option::is_some) && self.right_to_left.iter().all(Option::is_some)
    }
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    l2r: &mut [Option<usize>],
    r2l: &mut [Option<usize>],
) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if r2l[r].is_none_or(|l2| augment(l2, adj, seen, l2r, r2l)) {
            l2r[l] = Some(r);
            r2l[r] = Some(l);
            return true;
        }
    }
    false
}

pub fn max_matching(adj: &[Vec<usize>], right: usize) -> Matching {
    let order: Vec<usize> = (0..adj.len()).collect();
    matching_in_order(adj, right, &order)
}

/// Maximum matching with left vertices and adjacency lists visited in a
/// random order, so repeated calls explore different maximum matchings.
pub fn max_matching_shuffled<R: Rng>(adj: &[Vec<usize>], right: usize, rng: &mut R) -> Matching {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.shuffle(rng);
    let shuffled: Vec<Vec<usize>> = adj
        .iter()
        .map(|a| {
            let mut a = a.clone();
            a.shuffle(rng);
            a
        })
        .collect();
    matching_in_order(&shuffled, right, &order)
}

fn matching_in_order(adj: &[Vec<usize>], right: usize, order: &[usize]) -> Matching {
    let mut l2r = vec![None; adj.len()];
    let mut r2l = vec![None; right];
    let mut seen = vec![false; right];
    for &l in order {
        seen.iter_mut().for_each(|s| *s = false);
        augment(l, adj, &mut seen, &mut l2r, &mut r2l);
    }
    Matching {
        left_to_right: l2r,
        right_to_left: r2l,
    }
}

/// Minimum vertex cover from a maximum matching: with `Z` the vertices
/// reachable from unmatched left vertices by alternating paths, the cover is
/// `(L \ Z) ∪ (R ∩ Z)`. Returns `(left_cover, right_cover)`.
pub fn konig_cover(adj: &[Vec<usize>], right: usize, m: &Matching) -> (Vec<usize>, Vec<usize>) {
    let mut zl = vec![false; adj.len()];
    let mut zr = vec![false; right];
    let mut stack: Vec<usize> = (0..adj.len()).filter(|&l| m.left_to_right[l].is_none()).collect();
    for &l in &stack {
        zl[l] = true;
    }
    while let Some(l) = stack.pop() {
        for &r in &adj[l] {
            if zr[r] || m.left_to_right[l] == Some(r) {
                continue;
            }
            zr[r] = true;
            if let Some(l2) = m.right_to_left[r] {
                if !zl[l2] {
                    zl[l2] = true;
                    stack.push(l2);
                }
            }
        }
    }
    let left = (0..adj.len()).filter(|&l| !zl[l]).collect();
    let right = (0..right).filter(|&r| zr[r]).collect();
    (left, right)
}

/// Matching and cover of a bipartite [`Graph`] in original vertex labels.
pub struct GraphMatching {
    pub edges: Vec<(Vertex, Vertex)>,
    pub left_cover: Vec<Vertex>,
    pub right_cover: Vec<Vertex>,
}

/// Panics if `g` was not built with a bipartition.
pub fn graph_matching(g: &Graph) -> GraphMatching {
    let (l, r) = g.sides().expect("graph_matching needs a bipartite graph");
    let left = l.to_vec();
    let right = r.to_vec();
    let mut ridx = vec![usize::MAX; g.universe()];
    for (i, &v) in right.iter().enumerate() {
        ridx[v] = i;
    }
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&u| g.neighbors(u).iter().map(|v| ridx[v]).collect())
        .collect();
    let m = max_matching(&adj, right.len());
    let (lc, rc) = konig_cover(&adj, right.len(), &m);
    GraphMatching {
        edges: m.pairs().into_iter().map(|(a, b)| (left[a], right[b])).collect(),
        left_cover: lc.into_iter().map(|i| left[i]).collect(),
        right_cover: rc.into_iter().map(|i| right[i]).collect(),
    }
}
