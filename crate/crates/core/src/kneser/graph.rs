//! Simple undirected graphs stored as one bit row per vertex.

use crate::error::{Error, Result};
use crate::family::{SetFamily, SubsetMask};
use crate::limits::Limits;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Iterates the set bits of a bit row.
pub(crate) fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            }
        })
    })
}

#[inline]
pub(crate) fn popcount(row: &[u64]) -> u64 {
    row.iter().map(|w| w.count_ones() as u64).sum()
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    words: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `vertices` vertices.
    pub fn new(vertices: usize) -> Self {
        let words = words_for(vertices);
        Graph {
            vertices,
            words,
            rows: vec![0; vertices * words],
        }
    }

    pub(crate) fn with_cap(vertices: usize, limits: &Limits) -> Result<Self> {
        if vertices > limits.graph_m {
            return Err(Error::CapExceeded {
                what: "graph vertices",
                value: vertices as u64,
                cap: limits.graph_m as u64,
            });
        }
        Ok(Graph::new(vertices))
    }

    pub fn complete(vertices: usize) -> Self {
        let mut g = Graph::new(vertices);
        for u in 0..vertices {
            for v in u + 1..vertices {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(vertices: usize) -> Self {
        let mut g = Graph::new(vertices);
        if vertices >= 3 {
            for u in 0..vertices {
                g.add_edge(u, (u + 1) % vertices);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops and bad endpoints.
    /// Repeated edges are merged.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(vertices);
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for {vertices} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.vertices && v < self.vertices);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Bit row of the neighbours of `u`.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.row(u))
    }

    pub fn degree(&self, u: usize) -> u64 {
        popcount(self.row(u))
    }

    pub fn edge_count(&self) -> u64 {
        (0..self.vertices).map(|u| self.degree(u)).sum::<u64>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertices).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// The subgraph induced on `vertices`, relabelled 0.. in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Adjacency as one `u64` per vertex; only for graphs with at most 64 vertices.
    pub(crate) fn small_rows(&self) -> Vec<u64> {
        assert!(self.vertices <= 64);
        (0..self.vertices).map(|u| self.rows[u * self.words]).collect()
    }

    /// A degeneracy ordering: repeatedly removes a vertex of minimum remaining
    /// degree. Ties go to the smallest index, so the order is deterministic.
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.vertices;
        let mut degree: Vec<usize> = (0..n).map(|u| self.degree(u) as usize).collect();
        let max_degree = degree.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_degree + 1];
        for u in (0..n).rev() {
            buckets[degree[u]].push(u);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut low = 0;
        while order.len() < n {
            while buckets[low].is_empty() {
                low += 1;
            }
            let u = buckets[low].pop().expect("nonempty bucket");
            // Lazy deletion: skip stale entries.
            if removed[u] || degree[u] != low {
                continue;
            }
            removed[u] = true;
            order.push(u);
            for v in self.neighbors(u) {
                if !removed[v] {
                    degree[v] -= 1;
                    buckets[degree[v]].push(v);
                    low = low.min(degree[v]);
                }
            }
        }
        order
    }
}

/// Graph whose vertices are the members of a family, joined when disjoint.
#[derive(Clone, Debug)]
pub struct DisjointnessGraph {
    labels: Vec<SubsetMask>,
    graph: Graph,
}

impl DisjointnessGraph {
    pub fn labels(&self) -> &[SubsetMask] {
        &self.labels
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

impl std::ops::Deref for DisjointnessGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

/// Builds the disjointness graph of `family`, vertices in family order.
pub fn disjointness_graph(family: &SetFamily, limits: &Limits) -> Result<DisjointnessGraph> {
    let labels = family.members().to_vec();
    let mut graph = Graph::with_cap(labels.len(), limits)?;
    for (i, &a) in labels.iter().enumerate() {
        for (j, &b) in labels.iter().enumerate().skip(i + 1) {
            if a.is_disjoint(b) {
                graph.add_edge(i, j);
            }
        }
    }
    Ok(DisjointnessGraph { labels, graph })
}
