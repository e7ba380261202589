//! Simple graphs: link graphs, centers graphs, and the auxiliary graphs of the
//! completion stage.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::Vertex;

/// An undirected simple graph on `[0, n)` with optional bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    vertices: VertexSet,
    sides: Option<(VertexSet, VertexSet)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            adj: vec![VertexSet::new(n); n],
            vertices: VertexSet::full(n),
            sides: None,
        }
    }

    /// A graph whose declared vertex set is `vertices` (a subset of `[0, n)`).
    pub fn on(n: usize, vertices: VertexSet) -> Self {
        Self {
            vertices,
            ..Self::new(n)
        }
    }

    pub fn bipartite(n: usize, left: VertexSet, right: VertexSet) -> Self {
        debug_assert!(left.is_disjoint(&right));
        Self {
            vertices: left.union(&right),
            sides: Some((left, right)),
            ..Self::new(n)
        }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn sides(&self) -> Option<&(VertexSet, VertexSet)> {
        self.sides.as_ref()
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert!(u != v, "self-loop at {u}");
        debug_assert!(self.vertices.contains(u) && self.vertices.contains(v));
        if let Some((l, r)) = &self.sides {
            debug_assert!(
                (l.contains(u) && r.contains(v)) || (l.contains(v) && r.contains(u)),
                "edge {u}{v} does not cross the bipartition"
            );
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.n,
            edges: self.edges(),
        }
    }
}

/// Serializable view of a [`Graph`].
#[derive(Clone, Debug, Serialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_degrees() {
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        g.add_edge(2, 1);
        g.add_edge(0, 1);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    #[should_panic(expected = "self-loop")]
    fn rejects_loops() {
        Graph::new(3).add_edge(1, 1);
    }
}
