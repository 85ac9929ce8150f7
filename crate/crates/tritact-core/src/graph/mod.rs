//! Simple undirected graphs on vertices `0..n`, plus planarity testing and
//! combinatorial embeddings.

pub mod planarity;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange {
        vertex: usize,
        n: usize,
    },
    SelfLoop {
        vertex: usize,
    },
    DuplicateEdge {
        u: usize,
        v: usize,
    },
    /// A pairwise query was asked about a vertex and itself.
    IdenticalPair {
        vertex: usize,
    },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u}, {v})"),
            GraphError::IdenticalPair { vertex } => {
                write!(
                    f,
                    "pairwise query needs two distinct vertices, got {vertex} twice"
                )
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// A simple undirected graph on vertices `0..n`.
///
/// Neighbor sets are ordered, so every traversal in this crate is
/// deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph {
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        if self.adj[u].contains(&v) {
            return Err(GraphError::DuplicateEdge { u, v });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// All edges as `(u, v)` pairs with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in self.adj[u].range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    /// True when the graph has at least one vertex and every vertex is
    /// reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// True when the graph has at least three vertices, is connected, and
    /// removing any single vertex keeps it connected.
    pub fn is_biconnected(&self) -> bool {
        let n = self.n();
        if n < 3 || !self.is_connected() {
            return false;
        }
        // Iterative DFS from vertex 0 computing lowpoints. A non-root vertex
        // is a cut vertex when some child subtree cannot reach above it; the
        // root is one when it has more than one DFS child.
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut timer = 0usize;
        let mut root_children = 0usize;
        // Stack of (vertex, iterator position) pairs; neighbor lists are
        // materialized so the frame is Copy.
        let order: Vec<Vec<usize>> = (0..n)
            .map(|v| self.adj[v].iter().copied().collect())
            .collect();
        let mut stack: Vec<(usize, usize)> = Vec::with_capacity(n);
        disc[0] = timer;
        low[0] = timer;
        timer += 1;
        stack.push((0, 0));
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx < order[v].len() {
                let w = order[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    parent[w] = v;
                    if v == 0 {
                        root_children += 1;
                        if root_children > 1 {
                            return false;
                        }
                    }
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, 0));
                } else if w != parent[v] && disc[w] < low[v] {
                    low[v] = disc[w];
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    if low[v] < low[p] {
                        low[p] = low[v];
                    }
                    if p != 0 && low[v] >= disc[p] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Common neighbors of `u` and `v`, ascending.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        self.adj[u].intersection(&self.adj[v]).copied().collect()
    }

    /// For a pair of distinct vertices: the number of common neighbors and
    /// the number of edges joining two common neighbors.
    pub fn neighborhood_stats(&self, u: usize, v: usize) -> Result<(usize, usize), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::IdenticalPair { vertex: u });
        }
        let common = self.common_neighbors(u, v);
        let mut edges_within = 0;
        for (i, &a) in common.iter().enumerate() {
            for &b in &common[i + 1..] {
                if self.has_edge(a, b) {
                    edges_within += 1;
                }
            }
        }
        Ok((common.len(), edges_within))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_query() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 4);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.degree(2), 2);
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            Graph::from_edges(2, &[(1, 1)]),
            Err(GraphError::SelfLoop { vertex: 1 })
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 1, v: 0 })
        );
    }

    #[test]
    fn connectivity() {
        assert!(Graph::from_edges(3, &[(0, 1), (1, 2)])
            .unwrap()
            .is_connected());
        assert!(!Graph::from_edges(3, &[(0, 1)]).unwrap().is_connected());
        assert!(Graph::new(1).is_connected());
        assert!(!Graph::new(0).is_connected());
        assert!(!Graph::new(2).is_connected());
    }

    #[test]
    fn biconnectivity() {
        // Paths and anything with a cut vertex fail; cycles and K4 pass.
        assert!(!Graph::from_edges(3, &[(0, 1), (1, 2)])
            .unwrap()
            .is_biconnected());
        for k in 3..=6 {
            let cycle: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
            assert!(
                Graph::from_edges(k, &cycle).unwrap().is_biconnected(),
                "C{k}"
            );
        }
        // Bowtie: two triangles sharing vertex 2.
        let bowtie =
            Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(!bowtie.is_biconnected());
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(k4.is_biconnected());
        assert!(!Graph::new(2).is_biconnected());
        assert!(!Graph::from_edges(2, &[(0, 1)]).unwrap().is_biconnected());
        // Disconnected graph with no cut vertices is still not biconnected.
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        assert!(!two_triangles.is_biconnected());
    }

    #[test]
    fn neighborhood_counts() {
        // K4: any pair has the two other vertices in common, joined by an edge.
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.neighborhood_stats(0, 1), Ok((2, 1)));
        assert_eq!(k4.common_neighbors(0, 1), vec![2, 3]);

        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.neighborhood_stats(0, 2), Ok((1, 0)));
        assert_eq!(path.neighborhood_stats(0, 1), Ok((0, 0)));
        // Symmetric in the pair.
        assert_eq!(path.neighborhood_stats(2, 0), Ok((1, 0)));
    }

    #[test]
    fn neighborhood_stats_rejects_bad_pairs() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            path.neighborhood_stats(1, 1),
            Err(GraphError::IdenticalPair { vertex: 1 })
        );
        assert_eq!(
            path.neighborhood_stats(0, 3),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }
}
