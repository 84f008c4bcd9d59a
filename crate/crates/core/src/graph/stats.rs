use super::{Dag, Graph, VertexId};
use crate::ordering::degeneracy_ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    /// β, the largest core number.
    pub degeneracy: usize,
    /// γ, the largest `h` with at least `h` vertices of degree `>= h`.
    pub h_index: usize,
    /// Δ of the supplied DAG.
    pub max_out_degree: Option<usize>,
    /// `degree_histogram[d]` counts vertices of degree `d`.
    pub degree_histogram: Vec<usize>,
}

pub fn stats(g: &Graph, dag: Option<&Dag>) -> GraphStats {
    let mut degree_histogram = vec![0usize; g.max_degree() + 1];
    for v in 0..g.n() as VertexId {
        degree_histogram[g.degree(v)] += 1;
    }
    let (_, beta) = degeneracy_ordering(g);
    GraphStats {
        n: g.n(),
        m: g.m(),
        degeneracy: beta,
        h_index: h_index(&degree_histogram),
        max_out_degree: dag.map(Dag::max_out_degree),
        degree_histogram,
    }
}

fn h_index(histogram: &[usize]) -> usize {
    let mut at_least = 0;
    for h in (0..histogram.len()).rev() {
        at_least += histogram[h];
        if at_least >= h {
            return h;
        }
    }
    0
}
