//! The degree threshold, the two extremal families without a loose Hamilton
//! cycle, a solvable variant, and seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::hypergraph::{binom2, binom3, GraphBuilder, ThreeGraph, Triple};
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("n = {0} must be even")]
    OddOrder(usize),
    #[error("n = {n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("{family} needs n {rule}, got {n}")]
    WrongResidue {
        family: &'static str,
        rule: &'static str,
        n: usize,
    },
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
}

/// A graph together with the partition `V = A ∪ B` it was built from.
#[derive(Debug, Clone, Serialize)]
pub struct LabeledPartitionGraph {
    #[serde(skip)]
    pub graph: ThreeGraph,
    pub a: VertexSet,
    pub b: VertexSet,
    pub special_pair: Option<(Vertex, Vertex)>,
}

impl LabeledPartitionGraph {
    pub fn e_inside_b(&self) -> usize {
        self.graph.e_inside(&self.b)
    }
}

fn check_even(n: usize, min: usize) -> Result<(), ConstructionError> {
    if n % 2 == 1 {
        return Err(ConstructionError::OddOrder(n));
    }
    if n < min {
        return Err(ConstructionError::TooSmall { n, min });
    }
    Ok(())
}

/// `C(n-1, 2) - C(floor(3n/4), 2) + c` with `c = 2` when `4 | n`, else 1.
pub fn threshold(n: usize) -> Result<u64, ConstructionError> {
    check_even(n, 6)?;
    let c = if n % 4 == 0 { 2 } else { 1 };
    Ok(binom2(n - 1) - binom2(3 * n / 4) + c)
}

/// All triples meeting `A = [0, a)` on `n` vertices.
fn a_intersecting(n: usize, a: usize) -> GraphBuilder {
    let mut g = GraphBuilder::new(n);
    for x in 0..a {
        for y in x + 1..n {
            for z in y + 1..n {
                g.add(x, y, z).expect("indices are in range and distinct");
            }
        }
    }
    g
}

fn split(n: usize, a: usize, graph: ThreeGraph, special_pair: Option<(Vertex, Vertex)>) -> LabeledPartitionGraph {
    LabeledPartitionGraph {
        graph,
        a: VertexSet::range(n, 0, a),
        b: VertexSet::range(n, a, n),
        special_pair,
    }
}

/// The independent-set construction for `n ≡ 2 (mod 4)`:
/// `|A| = ceil(n/4) - 1`, every triple meeting `A`.
pub fn build_h1(n: usize) -> Result<LabeledPartitionGraph, ConstructionError> {
    check_even(n, 6)?;
    if n % 4 != 2 {
        return Err(ConstructionError::WrongResidue {
            family: "h1",
            rule: "≡ 2 (mod 4)",
            n,
        });
    }
    Ok(h1_shape(n).expect("checked above"))
}

/// The same shape as [`build_h1`] for any even `n`, without the residue
/// check. At `4 | n` this is not the tight example but is still
/// non-Hamiltonian when `n/2 - 2|A| ≥ 1`.
pub fn h1_shape(n: usize) -> Result<LabeledPartitionGraph, ConstructionError> {
    check_even(n, 6)?;
    let a = n.div_ceil(4) - 1;
    Ok(split(n, a, a_intersecting(n, a).build(), None))
}

/// The pair-cover construction for `4 | n`: `|A| = n/4 - 1`, every triple
/// meeting `A`, plus every triple containing both `b1` and `b2`.
pub fn build_h2(n: usize) -> Result<LabeledPartitionGraph, ConstructionError> {
    check_even(n, 8)?;
    if n % 4 != 0 {
        return Err(ConstructionError::WrongResidue {
            family: "h2",
            rule: "divisible by 4",
            n,
        });
    }
    let a = n / 4 - 1;
    let (b1, b2) = (a, a + 1);
    let mut g = a_intersecting(n, a);
    for x in b2 + 1..n {
        g.add(b1, b2, x).expect("distinct in-range triple");
    }
    Ok(split(n, a, g.build(), Some((b1, b2))))
}

/// The construction matching the residue of `n`.
pub fn build_extremal_example(n: usize) -> Result<LabeledPartitionGraph, ConstructionError> {
    check_even(n, 6)?;
    if n % 4 == 0 {
        build_h2(n)
    } else {
        build_h1(n)
    }
}

/// One more vertex in `A` than [`build_h1`]: `|A| = ceil(n/4)`,
/// `|B| = floor(3n/4)`, every triple meeting `A`.
pub fn build_h1_plus(n: usize) -> Result<LabeledPartitionGraph, ConstructionError> {
    check_even(n, 8)?;
    let a = n.div_ceil(4);
    Ok(split(n, a, a_intersecting(n, a).build(), None))
}

/// The Fano plane on seven vertices.
pub fn fano_plane() -> ThreeGraph {
    ThreeGraph::new(
        7,
        [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)],
    )
    .expect("valid lines")
}

fn check_probability(p: f64) -> Result<(), ConstructionError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(ConstructionError::BadProbability(p))
    }
}

/// Each triple independently with probability `p`, visited in lexicographic
/// order from a ChaCha8 stream seeded with `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<ThreeGraph, ConstructionError> {
    check_probability(p)?;
    if n == 0 {
        return Err(ConstructionError::TooSmall { n, min: 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = GraphBuilder::new(n);
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if rng.gen_bool(p) {
                    g.add(x, y, z).expect("distinct in-range triple");
                }
            }
        }
    }
    Ok(g.build())
}

/// Probability of keeping an `A`-meeting triple in [`random_extremal`].
pub const DEFAULT_A_PROB: f64 = 0.97;

/// A planted near-extremal instance with [`DEFAULT_A_PROB`].
pub fn random_extremal(n: usize, beta: f64, seed: u64) -> Result<LabeledPartitionGraph, ConstructionError> {
    random_extremal_with(n, beta, DEFAULT_A_PROB, seed)
}

/// Plants a random `B` of size `floor(3n/4)` spanning exactly
/// `min(floor(beta n^3), C(|B|, 3))` uniformly chosen triples, so the result
/// is always beta-extremal; triples meeting `A` appear with probability
/// `a_prob`.
pub fn random_extremal_with(
    n: usize,
    beta: f64,
    a_prob: f64,
    seed: u64,
) -> Result<LabeledPartitionGraph, ConstructionError> {
    if n < 6 {
        return Err(ConstructionError::TooSmall { n, min: 6 });
    }
    check_probability(a_prob)?;
    if !(beta >= 0.0) {
        return Err(ConstructionError::BadProbability(beta));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    let bsize = 3 * n / 4;
    let b = VertexSet::from_slice(n, &order[..bsize]);
    let a = b.complement();
    let planted = ((beta * (n as f64).powi(3)).floor() as u64).min(binom3(bsize)) as usize;

    let mut g = GraphBuilder::new(n);
    let mut inside = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if b.contains(x) && b.contains(y) && b.contains(z) {
                    inside.push((x, y, z));
                } else if rng.gen_bool(a_prob) {
                    g.add(x, y, z).expect("distinct in-range triple");
                }
            }
        }
    }
    for &(x, y, z) in inside.choose_multiple(&mut rng, planted) {
        g.add(x, y, z).expect("distinct in-range triple");
    }
    Ok(LabeledPartitionGraph {
        graph: g.build(),
        a,
        b,
        special_pair: None,
    })
}

/// Edges of `g` as triples, for callers that want to rebuild or perturb it.
pub fn triples(g: &ThreeGraph) -> Vec<(Vertex, Vertex, Vertex)> {
    g.edges().iter().map(|&Triple { a, b, c }| (a, b, c)).collect()
}
