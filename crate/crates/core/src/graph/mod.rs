//! Undirected simple graphs in compressed adjacency form.
//!
//! A [`Graph`] is immutable once built. Vertex ids are dense `u32` values in
//! `0..n`; each neighbor list is strictly increasing, symmetric, and free of
//! self-loops.

mod dag;
mod io;
mod stats;

pub use dag::{orient, Dag};
pub use io::{
    load_edge_list, read_binary, read_edge_list_file, write_binary, write_edge_list, LoadedGraph,
    BINARY_MAGIC,
};
pub use stats::{stats, GraphStats};

use crate::error::{Error, Result};
use crate::ordering::Adjacency;

pub type VertexId = u32;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    /// Builds a graph on `n` vertices from an arbitrary edge multiset.
    ///
    /// Duplicate and reversed edges collapse into one; self-loops are dropped.
    ///
    /// # Panics
    /// If an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut degree = vec![0usize; n];
        let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
        for (u, v) in edges {
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge ({u}, {v}) out of range for {n} vertices"
            );
            if u == v {
                continue;
            }
            pairs.push((u, v));
            pairs.push((v, u));
        }
        pairs.sort_unstable();
        pairs.dedup();
        for &(u, _) in &pairs {
            degree[u as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for d in degree {
            acc += d;
            offsets.push(acc);
        }
        let neighbors = pairs.into_iter().map(|(_, v)| v).collect();
        Graph { offsets, neighbors }
    }

    /// Builds a graph from raw CSR arrays, validating every invariant.
    pub fn from_csr(offsets: Vec<usize>, neighbors: Vec<VertexId>) -> Result<Self> {
        let g = Graph { offsets, neighbors };
        g.validate().map_err(Error::InvalidGraph)?;
        Ok(g)
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n() as VertexId)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[VertexId] {
        &self.neighbors
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n() as VertexId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// The subgraph induced by the vertices with `keep[v] == true`.
    ///
    /// Returns the new graph and the map from new ids to ids of `self`.
    /// Relative vertex order is preserved.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<VertexId>) {
        assert_eq!(keep.len(), self.n(), "keep mask length mismatch");
        let mut new_id = vec![VertexId::MAX; self.n()];
        let mut old_id = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                new_id[v] = old_id.len() as VertexId;
                old_id.push(v as VertexId);
            }
        }
        let mut offsets = Vec::with_capacity(old_id.len() + 1);
        let mut neighbors = Vec::new();
        offsets.push(0);
        for &v in &old_id {
            // Old neighbor lists are ascending and the relabeling is monotone.
            neighbors.extend(
                self.neighbors(v)
                    .iter()
                    .filter(|&&w| keep[w as usize])
                    .map(|&w| new_id[w as usize]),
            );
            offsets.push(neighbors.len());
        }
        (Graph { offsets, neighbors }, old_id)
    }

    /// Checks the structural invariants, naming the first violation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.offsets.is_empty() {
            return Err("offsets must hold n + 1 entries".into());
        }
        if self.offsets[0] != 0 || *self.offsets.last().unwrap() != self.neighbors.len() {
            return Err("offsets do not span the neighbor array".into());
        }
        if !self.neighbors.len().is_multiple_of(2) {
            return Err("sum of degrees is odd".into());
        }
        let n = self.n();
        if let Some(v) = self.offsets.windows(2).position(|w| w[0] > w[1]) {
            return Err(format!("offsets decrease at vertex {v}"));
        }
        for v in 0..n {
            let list = self.neighbors(v as VertexId);
            for (i, &w) in list.iter().enumerate() {
                if w as usize >= n {
                    return Err(format!("vertex {v} has out-of-range neighbor {w}"));
                }
                if w as usize == v {
                    return Err(format!("self-loop at vertex {v}"));
                }
                if i > 0 && list[i - 1] >= w {
                    return Err(format!("neighbors of {v} not strictly increasing"));
                }
                if !self.has_edge(w, v as VertexId) {
                    return Err(format!("edge ({v}, {w}) is not symmetric"));
                }
            }
        }
        Ok(())
    }
}

impl Adjacency for Graph {
    #[inline]
    fn vertex_count(&self) -> usize {
        self.n()
    }

    #[inline]
    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        Graph::neighbors(self, v)
    }
}
