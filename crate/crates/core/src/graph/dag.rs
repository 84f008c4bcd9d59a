use super::{Graph, VertexId};
use crate::error::{Error, Result};
use crate::ordering::VertexOrdering;

/// An orientation of a [`Graph`] under a total vertex order.
///
/// Vertices are relabeled so that a vertex's id in the DAG equals its rank;
/// every arc therefore points from a smaller id to a larger one and each
/// out-list is ascending in rank. [`Dag::vertex`] maps a rank back to the id
/// in the oriented graph.
#[derive(Clone, Debug)]
pub struct Dag {
    ordering: VertexOrdering,
    offsets: Vec<usize>,
    out: Vec<VertexId>,
    max_out_degree: usize,
}

/// Orients each edge `(u, v)` as `u -> v` iff `rank(u) < rank(v)`.
pub fn orient(g: &Graph, ordering: &VertexOrdering) -> Result<Dag> {
    if ordering.len() != g.n() {
        return Err(Error::Contract(format!(
            "ordering covers {} vertices but the graph has {}",
            ordering.len(),
            g.n()
        )));
    }
    let n = g.n();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(g.m());
    let mut max_out_degree = 0;
    offsets.push(0);
    for r in 0..n as VertexId {
        let v = ordering.vertex_at(r);
        let start = out.len();
        out.extend(
            g.neighbors(v)
                .iter()
                .map(|&w| ordering.rank(w))
                .filter(|&rw| rw > r),
        );
        out[start..].sort_unstable();
        max_out_degree = max_out_degree.max(out.len() - start);
        offsets.push(out.len());
    }
    Ok(Dag {
        ordering: ordering.clone(),
        offsets,
        out,
        max_out_degree,
    })
}

impl Dag {
    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of arcs; equals the undirected edge count of the source graph.
    #[inline]
    pub fn m(&self) -> usize {
        self.out.len()
    }

    /// Out-neighbors of the vertex with rank `r`, as ranks, ascending.
    #[inline]
    pub fn out_neighbors(&self, r: VertexId) -> &[VertexId] {
        let r = r as usize;
        &self.out[self.offsets[r]..self.offsets[r + 1]]
    }

    #[inline]
    pub fn out_degree(&self, r: VertexId) -> usize {
        let r = r as usize;
        self.offsets[r + 1] - self.offsets[r]
    }

    /// Δ, the largest out-degree.
    #[inline]
    pub fn max_out_degree(&self) -> usize {
        self.max_out_degree
    }

    pub fn ordering(&self) -> &VertexOrdering {
        &self.ordering
    }

    /// The source-graph id of the vertex with rank `r`.
    #[inline]
    pub fn vertex(&self, r: VertexId) -> VertexId {
        self.ordering.vertex_at(r)
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Index of the arc source owning arc slot `arc`.
    pub fn arc_source(&self, arc: usize) -> VertexId {
        debug_assert!(arc < self.m());
        (self.offsets.partition_point(|&o| o <= arc) - 1) as VertexId
    }

    /// Arcs as `(src, dst)` pairs of source-graph ids.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n() as VertexId).flat_map(move |r| {
            self.out_neighbors(r)
                .iter()
                .map(move |&s| (self.vertex(r), self.vertex(s)))
        })
    }
}
