//! Loose Hamilton path on `X ∪ Z` with `|Z| = 3(|X| - 1)` between two given
//! vertices of `X`, via two matchings on `Z` and a Hamilton path in an
//! auxiliary bipartite graph.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::StageError;
use crate::bitset::VertexSet;
use crate::hypergraph::{binom2, ThreeGraph};
use crate::loose::LoosePath;
use crate::matching::max_matching_shuffled;
use crate::params::Parameters;
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Completion {
    /// Runs `x0 a b c x a b c … x1`.
    pub path: LoosePath,
    pub m: usize,
    pub attempts: u32,
    /// Minimum over `x` of the smaller of its two matching coverages.
    pub min_coverage: usize,
    /// Minimum degree of an index vertex in the auxiliary graph.
    pub gamma_min_index_degree: usize,
    /// `(1 - 2√ρ)|X|`.
    pub gamma_index_bound: f64,
}

/// Checks `deḡ(v, Z) ≤ ρ C(|Z|, 2)` on `X` and `deḡ(v, XZ) ≤ ρ|X||Z|` on `Z`.
pub fn check_completion_precondition(
    h: &ThreeGraph,
    x: &VertexSet,
    z: &VertexSet,
    rho: f64,
) -> Result<(), StageError> {
    let zc = binom2(z.len()) as f64;
    for v in x.iter() {
        let missing = zc - h.deg_into(v, z) as f64;
        if missing > rho * zc {
            return Err(StageError::Precondition {
                vertex: v,
                missing: missing as u64,
                bound: rho * zc,
            });
        }
    }
    let xz = (x.len() * z.len()) as f64;
    for v in z.iter() {
        let present = h.deg_cross_unchecked(v, x, z) as f64;
        // pairs (x, z) with z ≠ v
        let missing = (x.len() * (z.len() - 1)) as f64 - present;
        if missing > rho * xz {
            return Err(StageError::Precondition {
                vertex: v,
                missing: missing as u64,
                bound: rho * xz,
            });
        }
    }
    Ok(())
}

/// Hamilton path from `s` to `t` in an undirected graph given by adjacency
/// lists: randomized rotation–extension, then exhaustive search when the
/// graph has at most 25 vertices.
pub fn hamilton_path_between<R: Rng>(adj: &[Vec<usize>], s: usize, t: usize, rng: &mut R) -> Option<Vec<usize>> {
    let n = adj.len();
    if s == t {
        return (n == 1).then(|| vec![s]);
    }
    rotation_extension(adj, s, t, rng, 40 * n * n + 1000).or_else(|| (n <= 25).then(|| exhaustive_path(adj, s, t)).flatten())
}

fn rotation_extension<R: Rng>(adj: &[Vec<usize>], s: usize, t: usize, rng: &mut R, budget: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut path = vec![s];
    let mut pos = vec![usize::MAX; n];
    pos[s] = 0;
    let mut stuck = 0;
    for _ in 0..budget {
        let end = *path.last().unwrap();
        if path.len() == n {
            debug_assert_eq!(end, t);
            return Some(path);
        }
        let last_step = path.len() == n - 1;
        let fresh: Vec<usize> = adj[end]
            .iter()
            .copied()
            .filter(|&w| pos[w] == usize::MAX && (w != t || last_step))
            .collect();
        if let Some(&w) = fresh.choose(rng) {
            pos[w] = path.len();
            path.push(w);
            stuck = 0;
            continue;
        }
        let pivots: Vec<usize> = adj[end]
            .iter()
            .copied()
            .filter(|&w| pos[w] != usize::MAX && pos[w] + 2 < path.len())
            .collect();
        stuck += 1;
        if pivots.is_empty() || stuck > 4 * n {
            // restart from scratch
            for &v in &path {
                pos[v] = usize::MAX;
            }
            path.truncate(1);
            pos[s] = 0;
            stuck = 0;
            continue;
        }
        let w = *pivots.choose(rng).unwrap();
        let i = pos[w];
        path[i + 1..].reverse();
        for (k, &v) in path.iter().enumerate().skip(i + 1) {
            pos[v] = k;
        }
    }
    None
}

fn exhaustive_path(adj: &[Vec<usize>], s: usize, t: usize) -> Option<Vec<usize>> {
    fn go(
        adj: &[Vec<usize>],
        t: usize,
        path: &mut Vec<usize>,
        seen: u64,
        dead: &mut HashSet<(u64, usize)>,
    ) -> bool {
        let n = adj.len();
        let end = *path.last().unwrap();
        if path.len() == n {
            return end == t;
        }
        if end == t || dead.contains(&(seen, end)) {
            return false;
        }
        for &w in &adj[end] {
            if seen >> w & 1 == 0 && (w != t || path.len() == n - 1) {
                path.push(w);
                if go(adj, t, path, seen | 1 << w, dead) {
                    return true;
                }
                path.pop();
            }
        }
        dead.insert((seen, end));
        false
    }
    let mut path = vec![s];
    let mut dead = HashSet::new();
    go(adj, t, &mut path, 1 << s, &mut dead).then_some(path)
}

enum Attempt {
    NoPerfectMatching,
    Coverage(usize),
    NoGammaPath,
}

/// Builds the loose Hamilton path on `X ∪ Z` from `x0` to `x1`.
pub fn complete_bipartite_stage<R: Rng>(
    h: &ThreeGraph,
    x: &VertexSet,
    z: &VertexSet,
    x0: Vertex,
    x1: Vertex,
    params: &Parameters,
    rng: &mut R,
) -> Result<Completion, StageError> {
    let (rho, resample_limit) = (params.rho, params.resample_limit);
    if x.is_empty() || z.len() != 3 * (x.len() - 1) {
        return Err(StageError::SizeMismatch { x: x.len(), z: z.len() });
    }
    if !x.contains(x0) || !x.contains(x1) || x0 == x1 {
        return Err(StageError::BadEnds { x0, x1 });
    }
    check_completion_precondition(h, x, z, rho)?;

    let m = x.len() - 1;
    let xs = x.to_vec();
    let need = (x.len() as f64 * (1.0 - rho.sqrt())).ceil() as usize;
    let good = |u: Vertex, v: Vertex| h.link_count_in(u, v, x) >= need;
    let mut zs = z.to_vec();
    let mut worst = None;
    let mut best_coverage = 0;

    for attempt in 1..=resample_limit.max(1) {
        zs.shuffle(rng);
        let (z1, rest) = zs.split_at(m);
        let (z2, z3) = rest.split_at(m);
        let adj1: Vec<Vec<usize>> = z1.iter().map(|&a| (0..m).filter(|&j| good(a, z2[j])).collect()).collect();
        let adj2: Vec<Vec<usize>> = z2.iter().map(|&b| (0..m).filter(|&k| good(b, z3[k])).collect()).collect();
        let m1 = max_matching_shuffled(&adj1, m, rng);
        let m2 = max_matching_shuffled(&adj2, m, rng);
        if !m1.is_perfect() || !m2.is_perfect() {
            worst.get_or_insert(Attempt::NoPerfectMatching);
            continue;
        }
        let triples: Vec<[Vertex; 3]> = (0..m)
            .map(|i| {
                let j = m1.left_to_right[i].unwrap();
                let k = m2.left_to_right[j].unwrap();
                [z1[i], z2[j], z3[k]]
            })
            .collect();

        let mut min_cov = usize::MAX;
        for &v in &xs {
            let c1 = triples.iter().filter(|t| h.has_edge(v, t[0], t[1])).count();
            let c2 = triples.iter().filter(|t| h.has_edge(v, t[1], t[2])).count();
            min_cov = min_cov.min(c1.min(c2));
        }
        if 64 * min_cov < 49 * m {
            best_coverage = best_coverage.max(min_cov);
            if !matches!(worst, Some(Attempt::NoGammaPath)) {
                worst = Some(Attempt::Coverage(best_coverage));
            }
            continue;
        }

        // nodes 0..=m are X (in `xs` order), m+1+i is triple i
        let mut adj = vec![Vec::new(); 2 * m + 1];
        for (li, &v) in xs.iter().enumerate() {
            for (i, t) in triples.iter().enumerate() {
                if h.has_edge(v, t[0], t[1]) && h.has_edge(v, t[1], t[2]) {
                    adj[li].push(m + 1 + i);
                    adj[m + 1 + i].push(li);
                }
            }
        }
        let gamma_min_index_degree = (0..m).map(|i| adj[m + 1 + i].len()).min().unwrap_or(0);
        let s = xs.binary_search(&x0).unwrap();
        let t = xs.binary_search(&x1).unwrap();
        let Some(gpath) = hamilton_path_between(&adj, s, t, rng) else {
            worst = Some(Attempt::NoGammaPath);
            continue;
        };

        let mut seq = Vec::with_capacity(x.len() + z.len());
        for node in gpath {
            if node <= m {
                seq.push(xs[node]);
            } else {
                seq.extend(triples[node - m - 1]);
            }
        }
        return Ok(Completion {
            path: LoosePath::new(seq),
            m,
            attempts: attempt,
            min_coverage: min_cov,
            gamma_min_index_degree,
            gamma_index_bound: (1.0 - 2.0 * rho.sqrt()) * x.len() as f64,
        });
    }
    let attempts = resample_limit.max(1);
    Err(match worst {
        Some(Attempt::NoGammaPath) => StageError::NoGammaPath { m },
        Some(Attempt::Coverage(best)) => StageError::CoverageUnreachable { attempts, best, m },
        _ => StageError::NoPerfectMatching { attempts },
    })
}

/// `true` when `p` has the lifted shape: every fourth position (from 0) lies
/// in `x` and all other positions lie outside it.
pub fn has_lifted_pattern(p: &LoosePath, x: &VertexSet) -> bool {
    p.len() % 4 == 1 && p.seq.iter().enumerate().all(|(i, &v)| x.contains(v) == (i % 4 == 0))
}
