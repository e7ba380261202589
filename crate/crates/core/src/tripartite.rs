//! Greedy almost-spanning loose path in a regular triple `(V1, V2, V3)` with
//! `|V1| = |V3| = m` and `|V2| = 2m`.
//!
//! Junctions alternate `V1, V3, V1, ...` and middles come from `V2`. Each new
//! junction `v` must keep `deg(v, U2 Ur) ≥ (d - eps) |U2| |Ur|`, where the `U`
//! sets are the unused parts of the path's prefix up to the previous junction
//! and `Ur` is the part of the junction after `v`. The walk stops once some
//! part has fewer than `(2 eps / d) |Vi|` unused vertices, or when no
//! continuation qualifies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::hypergraph::{GraphBuilder, ThreeGraph};
use crate::loose::LoosePath;
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TripartiteError {
    #[error("parts must have sizes m, 2m, m; got {0}, {1}, {2}")]
    PartSizes(usize, usize, usize),
    #[error("parts overlap")]
    Overlap,
    #[error("need d > 2 eps > 0, got d = {d}, eps = {eps}")]
    Density { d: f64, eps: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StopReason {
    NoStart,
    PartExhausted,
    NoContinuation,
}

#[derive(Debug, Clone, Serialize)]
pub struct TripartiteRun {
    pub path: LoosePath,
    pub omitted: usize,
    /// `8 eps m / d + 3`.
    pub bound: f64,
    pub stopped: StopReason,
}

/// `deg(v, S T)` for disjoint `S`, `T`.
fn cross(h: &ThreeGraph, v: Vertex, s: &VertexSet, t: &VertexSet) -> usize {
    s.iter().map(|x| h.link_count_in(v, x, t)).sum()
}

pub fn greedy_tripartite_path(
    h: &ThreeGraph,
    parts: [&VertexSet; 3],
    d: f64,
    eps: f64,
) -> Result<TripartiteRun, TripartiteError> {
    let [v1, v2, v3] = parts;
    let m = v1.len();
    if v3.len() != m || v2.len() != 2 * m || m == 0 {
        return Err(TripartiteError::PartSizes(v1.len(), v2.len(), v3.len()));
    }
    if !v1.is_disjoint(v2) || !v1.is_disjoint(v3) || !v2.is_disjoint(v3) {
        return Err(TripartiteError::Overlap);
    }
    if !(eps > 0.0 && d > 2.0 * eps) {
        return Err(TripartiteError::Density { d, eps });
    }
    let slack = d - eps;
    let stop_frac = 2.0 * eps / d;
    let total = 4 * m;
    let bound = 8.0 * eps * m as f64 / d + 3.0;
    let sizes = [m, 2 * m, m];

    let mut unused = [v1.clone(), v2.clone(), v3.clone()];
    let exhausted = |u: &[VertexSet; 3]| (0..3).any(|i| (u[i].len() as f64) < stop_frac * sizes[i] as f64);
    let qualifies = |v: Vertex, u2: &VertexSet, ur: &VertexSet| {
        cross(h, v, u2, ur) as f64 >= slack * (u2.len() * ur.len()) as f64
    };

    let Some(start) = v1.iter().find(|&v| qualifies(v, v2, v3)) else {
        return Ok(TripartiteRun {
            path: LoosePath::default(),
            omitted: total,
            bound,
            stopped: StopReason::NoStart,
        });
    };
    let mut seq = vec![start];
    unused[0].remove(start);
    // Index into `unused` of the current junction's part.
    let mut side = 0;
    let stopped = loop {
        if exhausted(&unused) {
            break StopReason::PartExhausted;
        }
        let cur = *seq.last().expect("path has a start");
        let target = 2 - side;
        let mut pick = None;
        'scan: for mid in unused[1].iter() {
            for next in h.link_iter_in(cur, mid, &unused[target]) {
                // The junction after `next` lives in `side`'s part again.
                if qualifies(next, &unused[1], &unused[side]) {
                    pick = Some((mid, next));
                    break 'scan;
                }
            }
        }
        let Some((mid, next)) = pick else {
            break StopReason::NoContinuation;
        };
        seq.push(mid);
        seq.push(next);
        unused[1].remove(mid);
        unused[target].remove(next);
        side = target;
    };
    Ok(TripartiteRun {
        omitted: total - seq.len(),
        path: LoosePath::new(seq),
        bound,
        stopped,
    })
}

/// Parts `[0, m)`, `[m, 3m)`, `[3m, 4m)`.
pub fn tripartite_parts(m: usize) -> [VertexSet; 3] {
    let n = 4 * m;
    [
        VertexSet::range(n, 0, m),
        VertexSet::range(n, m, 3 * m),
        VertexSet::range(n, 3 * m, 4 * m),
    ]
}

/// Every crossing triple `x y z` with `x ∈ V1, y ∈ V2, z ∈ V3`, kept with
/// probability `p`.
pub fn random_tripartite(m: usize, p: f64, seed: u64) -> (ThreeGraph, [VertexSet; 3]) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = GraphBuilder::new(4 * m);
    for x in 0..m {
        for y in m..3 * m {
            for z in 3 * m..4 * m {
                if rng.gen_bool(p) {
                    g.add(x, y, z).expect("distinct in-range triple");
                }
            }
        }
    }
    (g.build(), tripartite_parts(m))
}
