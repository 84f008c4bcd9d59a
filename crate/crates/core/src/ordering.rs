//! Vertex orderings: degree, degeneracy (core peeling), and greedy-color.
//!
//! Every function here is pure over an immutable adjacency and works on any
//! [`Adjacency`] implementor, so the same code colors the whole graph and the
//! per-root induced subgraphs built by the bitmap engine.

use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::graph::VertexId;

/// Read-only undirected adjacency with ascending neighbor lists.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: VertexId) -> &[VertexId];

    #[inline]
    fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }
}

/// A bijection between vertices and ranks `0..n`.
///
/// Rank `r` corresponds to position `r + 1` in a one-based numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    rank: Vec<VertexId>,
    order: Vec<VertexId>,
}

impl VertexOrdering {
    pub fn identity(n: usize) -> Self {
        let order: Vec<VertexId> = (0..n as VertexId).collect();
        VertexOrdering {
            rank: order.clone(),
            order,
        }
    }

    /// Builds an ordering from the vertex sequence `order[rank]`.
    pub fn from_order(order: Vec<VertexId>) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![VertexId::MAX; n];
        for (r, &v) in order.iter().enumerate() {
            let slot = rank.get_mut(v as usize).ok_or_else(|| {
                Error::Contract(format!("vertex {v} out of range for ordering of {n}"))
            })?;
            if *slot != VertexId::MAX {
                return Err(Error::Contract(format!("vertex {v} appears twice")));
            }
            *slot = r as VertexId;
        }
        Ok(VertexOrdering { rank, order })
    }

    fn from_order_unchecked(order: Vec<VertexId>) -> Self {
        let mut rank = vec![0; order.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v as usize] = r as VertexId;
        }
        VertexOrdering { rank, order }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    #[inline]
    pub fn rank(&self, v: VertexId) -> VertexId {
        self.rank[v as usize]
    }

    #[inline]
    pub fn vertex_at(&self, r: VertexId) -> VertexId {
        self.order[r as usize]
    }

    /// Vertices in rank order.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn ranks(&self) -> &[VertexId] {
        &self.rank
    }
}

/// Ascending `(degree, id)`.
pub fn degree_ordering<A: Adjacency>(g: &A) -> VertexOrdering {
    let mut order: Vec<VertexId> = (0..g.vertex_count() as VertexId).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    VertexOrdering::from_order_unchecked(order)
}

/// Descending degree, ties by ascending id. The default greedy-coloring visit order.
pub fn inverse_degree_ordering<A: Adjacency>(g: &A) -> VertexOrdering {
    let mut order: Vec<VertexId> = (0..g.vertex_count() as VertexId).collect();
    order.sort_by_key(|&v| (Reverse(g.degree(v)), v));
    VertexOrdering::from_order_unchecked(order)
}

/// Peeling order of the linear-time core decomposition, and the degeneracy β.
///
/// Rank `i` is the vertex deleted at step `i` when a vertex of minimum
/// residual degree is deleted repeatedly (bucket queue, ties resolved by
/// bucket position). β is the largest residual degree seen at deletion.
pub fn degeneracy_ordering<A: Adjacency>(g: &A) -> (VertexOrdering, usize) {
    let n = g.vertex_count();
    if n == 0 {
        return (VertexOrdering::identity(0), 0);
    }
    let mut deg: Vec<usize> = (0..n as VertexId).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // Counting sort of vertices by degree: `vert` is the sorted array,
    // `pos[v]` the slot of v, `bin[d]` the first slot of degree-d vertices.
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d + 1] += 1;
    }
    for d in 1..bin.len() {
        bin[d] += bin[d - 1];
    }
    let mut vert = vec![0 as VertexId; n];
    let mut pos = vec![0usize; n];
    {
        let mut next = bin.clone();
        for v in 0..n {
            pos[v] = next[deg[v]];
            vert[pos[v]] = v as VertexId;
            next[deg[v]] += 1;
        }
    }

    let mut beta = 0;
    for i in 0..n {
        let v = vert[i];
        let dv = deg[v as usize];
        beta = beta.max(dv);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if deg[w] > dv {
                // Swap w to the front of its bucket, then shrink the bucket.
                let dw = deg[w];
                let pw = pos[w];
                let first = bin[dw];
                let u = vert[first] as usize;
                if u != w {
                    vert.swap(pw, first);
                    pos[u] = pw;
                    pos[w] = first;
                }
                bin[dw] += 1;
                deg[w] -= 1;
            }
        }
    }
    (VertexOrdering::from_order_unchecked(vert), beta)
}

/// A proper coloring with colors `1..=num_colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorAssignment {
    pub color: Vec<u32>,
    pub num_colors: u32,
}

impl ColorAssignment {
    #[inline]
    pub fn of(&self, v: VertexId) -> u32 {
        self.color[v as usize]
    }
}

/// Greedy coloring: each vertex, in `visit` order, takes the smallest
/// positive color not used by an already-colored neighbor.
pub fn greedy_coloring<A: Adjacency>(g: &A, visit: &VertexOrdering) -> ColorAssignment {
    let mut color = Vec::new();
    let mut mark = Vec::new();
    let num_colors = greedy_coloring_into(g, visit.order(), &mut color, &mut mark);
    ColorAssignment { color, num_colors }
}

/// Allocation-reusing core of [`greedy_coloring`]; returns the color count.
pub fn greedy_coloring_into<A: Adjacency>(
    g: &A,
    visit: &[VertexId],
    color: &mut Vec<u32>,
    mark: &mut Vec<u32>,
) -> u32 {
    greedy_coloring_by(
        g.vertex_count(),
        visit,
        |v, f| g.neighbors(v).iter().for_each(|&w| f(w)),
        color,
        mark,
    )
}

/// Greedy coloring over an adjacency given as a callback:
/// `for_each_neighbor(v, f)` must call `f` once per neighbor of `v`.
pub fn greedy_coloring_by<N>(
    n: usize,
    visit: &[VertexId],
    mut for_each_neighbor: N,
    color: &mut Vec<u32>,
    mark: &mut Vec<u32>,
) -> u32
where
    N: FnMut(VertexId, &mut dyn FnMut(VertexId)),
{
    color.clear();
    color.resize(n, 0);
    mark.clear();
    // mark[c] == stamp means color c is taken by a neighbor of the current vertex
    mark.resize(n + 2, 0);
    let mut num_colors = 0;
    for (step, &v) in visit.iter().enumerate() {
        let stamp = step as u32 + 1;
        for_each_neighbor(v, &mut |w| {
            let c = color[w as usize] as usize;
            if c != 0 {
                mark[c] = stamp;
            }
        });
        let mut c = 1;
        while mark[c] == stamp {
            c += 1;
        }
        color[v as usize] = c as u32;
        num_colors = num_colors.max(c as u32);
    }
    num_colors
}

/// Rank by descending color, ties by ascending id, after greedy coloring in
/// inverse degree order. Orienting with it gives `u -> v` iff `c_u > c_v`
/// for every edge, since adjacent vertices never share a color.
pub fn color_ordering<A: Adjacency>(g: &A) -> (VertexOrdering, ColorAssignment) {
    let coloring = greedy_coloring(g, &inverse_degree_ordering(g));
    let mut order: Vec<VertexId> = (0..g.vertex_count() as VertexId).collect();
    order.sort_by_key(|&v| (Reverse(coloring.of(v)), v));
    (VertexOrdering::from_order_unchecked(order), coloring)
}
