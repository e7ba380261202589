//! Dense 3-uniform hypergraphs with a pair-indexed link structure.
//!
//! Every unordered pair `{u, v}` stores the bitset of vertices `w` completing it
//! to an edge, so codegree and link queries are a popcount away. The flat,
//! sorted triple list is kept alongside for iteration and serialization.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{self, iter_words, VertexSet};
use crate::graph::Graph;
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("triple ({0}, {1}, {2}) repeats a vertex")]
    RepeatedVertex(Vertex, Vertex, Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Triple),
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("vertex {0} lies inside the sets it is linked against")]
    VertexInSet(Vertex),
    #[error("codegree needs two distinct vertices, got {0} twice")]
    SameVertex(Vertex),
    #[error("set universe {got} does not match graph order {expected}")]
    UniverseMismatch { expected: usize, got: usize },
}

/// An edge in canonical form `a < b < c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
}

impl Triple {
    /// Sorts the three vertices; fails when two coincide.
    pub fn new(x: Vertex, y: Vertex, z: Vertex) -> Result<Self, GraphError> {
        let mut v = [x, y, z];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(GraphError::RepeatedVertex(x, y, z));
        }
        Ok(Self {
            a: v[0],
            b: v[1],
            c: v[2],
        })
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    pub fn shared(&self, other: &Triple) -> usize {
        self.vertices()
            .iter()
            .filter(|&&v| other.contains(v))
            .count()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.a, self.b, self.c)
    }
}

#[inline]
pub fn binom2(k: usize) -> u64 {
    let k = k as u64;
    k * k.saturating_sub(1) / 2
}

#[inline]
pub fn binom3(k: usize) -> u64 {
    let k = k as u64;
    if k < 3 {
        0
    } else {
        k * (k - 1) * (k - 2) / 6
    }
}

/// An immutable 3-uniform hypergraph on `[0, n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ThreeGraph {
    n: usize,
    words: usize,
    edges: Vec<Triple>,
    links: Vec<u64>,
    degrees: Vec<usize>,
}

impl fmt::Debug for ThreeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThreeGraph")
            .field("n", &self.n)
            .field("edges", &self.edges.len())
            .finish()
    }
}

/// Incremental builder; the only place a graph is mutated.
pub struct GraphBuilder {
    n: usize,
    words: usize,
    edges: Vec<Triple>,
    links: Vec<u64>,
    degrees: Vec<usize>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        let words = bitset::words_for(n);
        Self {
            n,
            words,
            edges: Vec::new(),
            links: vec![0; n * n * words],
            degrees: vec![0; n],
        }
    }

    #[inline]
    fn bit(&self, u: Vertex, v: Vertex, w: Vertex) -> bool {
        self.links[(u * self.n + v) * self.words + w / 64] >> (w % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, u: Vertex, v: Vertex, w: Vertex) {
        let i = (u * self.n + v) * self.words + w / 64;
        self.links[i] |= 1 << (w % 64);
    }

    fn check(&self, x: Vertex, y: Vertex, z: Vertex) -> Result<Triple, GraphError> {
        for v in [x, y, z] {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        Triple::new(x, y, z)
    }

    /// Adds an edge, returning `false` if it was already present.
    pub fn add(&mut self, x: Vertex, y: Vertex, z: Vertex) -> Result<bool, GraphError> {
        let t = self.check(x, y, z)?;
        if self.bit(t.a, t.b, t.c) {
            return Ok(false);
        }
        self.insert_unchecked(t);
        Ok(true)
    }

    /// Adds an edge, failing on duplicates.
    pub fn add_strict(&mut self, x: Vertex, y: Vertex, z: Vertex) -> Result<(), GraphError> {
        let t = self.check(x, y, z)?;
        if self.bit(t.a, t.b, t.c) {
            return Err(GraphError::DuplicateEdge(t));
        }
        self.insert_unchecked(t);
        Ok(())
    }

    fn insert_unchecked(&mut self, t: Triple) {
        let Triple { a, b, c } = t;
        self.set(a, b, c);
        self.set(b, a, c);
        self.set(a, c, b);
        self.set(c, a, b);
        self.set(b, c, a);
        self.set(c, b, a);
        self.degrees[a] += 1;
        self.degrees[b] += 1;
        self.degrees[c] += 1;
        self.edges.push(t);
    }

    pub fn contains(&self, x: Vertex, y: Vertex, z: Vertex) -> bool {
        x < self.n && y < self.n && z < self.n && x != y && self.bit(x, y, z)
    }

    pub fn build(mut self) -> ThreeGraph {
        self.edges.sort_unstable();
        ThreeGraph {
            n: self.n,
            words: self.words,
            edges: self.edges,
            links: self.links,
            degrees: self.degrees,
        }
    }
}

impl ThreeGraph {
    /// Canonicalizes and deduplicates `triples` into a graph on `n` vertices.
    pub fn new<I>(n: usize, triples: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut b = GraphBuilder::new(n);
        for (x, y, z) in triples {
            b.add(x, y, z)?;
        }
        Ok(b.build())
    }

    /// Like [`ThreeGraph::new`] but rejects duplicate edges.
    pub fn new_strict<I>(n: usize, triples: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut b = GraphBuilder::new(n);
        for (x, y, z) in triples {
            b.add_strict(x, y, z)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    b.insert_unchecked(Triple { a: x, b: y, c: z });
                }
            }
        }
        b.build()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted canonical order.
    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Raw link words of the pair `{u, v}`; empty when `u == v`.
    #[inline]
    pub fn link(&self, u: Vertex, v: Vertex) -> &[u64] {
        let start = (u * self.n + v) * self.words;
        &self.links[start..start + self.words]
    }

    pub fn link_set(&self, u: Vertex, v: Vertex) -> VertexSet {
        let mut s = VertexSet::new(self.n);
        for w in iter_words(self.link(u, v)) {
            s.insert(w);
        }
        s
    }

    #[inline]
    pub fn has_edge(&self, x: Vertex, y: Vertex, z: Vertex) -> bool {
        x != y && self.link(x, y)[z / 64] >> (z % 64) & 1 == 1
    }

    /// Number of `w` in `set` completing `{u, v}`.
    #[inline]
    pub fn link_count_in(&self, u: Vertex, v: Vertex, set: &VertexSet) -> usize {
        bitset::intersection_len(self.link(u, v), set.words())
    }

    #[inline]
    pub fn link_any_in(&self, u: Vertex, v: Vertex, set: &VertexSet) -> bool {
        bitset::words_any(self.link(u, v), set.words())
    }

    /// Vertices of `set` completing `{u, v}`, in increasing order.
    pub fn link_iter_in<'a>(
        &'a self,
        u: Vertex,
        v: Vertex,
        set: &'a VertexSet,
    ) -> impl Iterator<Item = Vertex> + 'a {
        self.link(u, v)
            .iter()
            .zip(set.words())
            .enumerate()
            .flat_map(|(i, (a, b))| {
                let mut w = a & b;
                std::iter::from_fn(move || {
                    if w == 0 {
                        None
                    } else {
                        let bit = w.trailing_zeros() as usize;
                        w &= w - 1;
                        Some(i * 64 + bit)
                    }
                })
            })
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        if s.universe() != self.n {
            Err(GraphError::UniverseMismatch {
                expected: self.n,
                got: s.universe(),
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// δ1; zero for the empty graph.
    pub fn min_vertex_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn codegree(&self, u: Vertex, v: Vertex) -> Result<usize, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(self.link(u, v).iter().map(|w| w.count_ones() as usize).sum())
    }

    /// δ2 over all pairs; zero when `n < 2`.
    pub fn min_codegree(&self) -> usize {
        let mut best = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let c: usize = self.link(u, v).iter().map(|w| w.count_ones() as usize).sum();
                best = Some(best.map_or(c, |b: usize| b.min(c)));
            }
        }
        best.unwrap_or(0)
    }

    pub fn max_codegree(&self) -> usize {
        let mut best = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let c: usize = self.link(u, v).iter().map(|w| w.count_ones() as usize).sum();
                best = best.max(c);
            }
        }
        best
    }

    /// The link graph of `v` on `V \ {v}`.
    pub fn link_graph(&self, v: Vertex) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let mut others = VertexSet::full(self.n);
        others.remove(v);
        let mut g = Graph::on(self.n, others);
        for x in 0..self.n {
            for y in iter_words(self.link(v, x)).filter(|&y| y > x) {
                g.add_edge(x, y);
            }
        }
        Ok(g)
    }

    /// Bipartite link of `v` between disjoint `s` and `t`.
    pub fn link_bipartite(&self, v: Vertex, s: &VertexSet, t: &VertexSet) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        self.check_set(s)?;
        self.check_set(t)?;
        if !s.is_disjoint(t) {
            return Err(GraphError::OverlappingSets);
        }
        if s.contains(v) || t.contains(v) {
            return Err(GraphError::VertexInSet(v));
        }
        let mut g = Graph::bipartite(self.n, s.clone(), t.clone());
        for x in s {
            for y in self.link_iter_in(v, x, t) {
                g.add_edge(x, y);
            }
        }
        Ok(g)
    }

    /// Edges containing `v` and two vertices of `set` (`v` itself excluded).
    pub fn deg_into(&self, v: Vertex, set: &VertexSet) -> usize {
        let mut total = 0;
        for x in set.iter().filter(|&x| x != v) {
            total += self.link_count_in(v, x, set);
        }
        total / 2
    }

    /// `C(|set|, 2) - deg_into(v, set)`.
    pub fn deg_into_complement(&self, v: Vertex, set: &VertexSet) -> i64 {
        binom2(set.len()) as i64 - self.deg_into(v, set) as i64
    }

    /// Edges `{v, s, t}` with `s ∈ S`, `t ∈ T`; the sets must be disjoint.
    pub fn deg_cross(&self, v: Vertex, s: &VertexSet, t: &VertexSet) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        self.check_set(s)?;
        self.check_set(t)?;
        if !s.is_disjoint(t) {
            return Err(GraphError::OverlappingSets);
        }
        Ok(self.deg_cross_unchecked(v, s, t))
    }

    pub(crate) fn deg_cross_unchecked(&self, v: Vertex, s: &VertexSet, t: &VertexSet) -> usize {
        s.iter()
            .filter(|&x| x != v)
            .map(|x| self.link_count_in(v, x, t))
            .sum()
    }

    /// `|S||T| - deg_cross(v, S, T)`.
    pub fn deg_cross_complement(&self, v: Vertex, s: &VertexSet, t: &VertexSet) -> Result<i64, GraphError> {
        let d = self.deg_cross(v, s, t)?;
        Ok((s.len() * t.len()) as i64 - d as i64)
    }

    /// Edges with all three vertices in `set`.
    pub fn e_inside(&self, set: &VertexSet) -> usize {
        if set.len() < 3 {
            return 0;
        }
        self.edges
            .iter()
            .filter(|t| set.contains(t.a) && set.contains(t.b) && set.contains(t.c))
            .count()
    }

    /// Edges `xyz` with `x ∈ X`, `y ∈ Y`, `z ∈ Z` for some assignment of the
    /// edge's vertices to the three roles.
    pub fn e_triple(&self, x: &VertexSet, y: &VertexSet, z: &VertexSet) -> usize {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        self.edges
            .iter()
            .filter(|t| {
                let v = t.vertices();
                PERMS
                    .iter()
                    .any(|p| x.contains(v[p[0]]) && y.contains(v[p[1]]) && z.contains(v[p[2]]))
            })
            .count()
    }

    /// The induced subgraph on `set`, re-indexed in increasing order. The
    /// returned vector maps new indices to old ones.
    pub fn induced(&self, set: &VertexSet) -> Result<(ThreeGraph, Vec<Vertex>), GraphError> {
        self.check_set(set)?;
        if set.is_empty() {
            return Err(GraphError::EmptySet);
        }
        let map: Vec<Vertex> = set.to_vec();
        let mut back = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            back[v] = i;
        }
        let mut b = GraphBuilder::new(map.len());
        for t in &self.edges {
            if set.contains(t.a) && set.contains(t.b) && set.contains(t.c) {
                b.insert_unchecked(Triple {
                    a: back[t.a],
                    b: back[t.b],
                    c: back[t.c],
                });
            }
        }
        Ok((b.build(), map))
    }

    /// Applies `perm` (old index to new index).
    pub fn relabel(&self, perm: &[Vertex]) -> ThreeGraph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut b = GraphBuilder::new(self.n);
        for t in &self.edges {
            b.add(perm[t.a], perm[t.b], perm[t.c])
                .expect("relabelling with a permutation keeps triples valid");
        }
        b.build()
    }
}
