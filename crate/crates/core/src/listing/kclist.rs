//! Ordering-based listing with explicit induced sub-DAGs.
//!
//! Each recursion level materializes the DAG induced by the current
//! candidate set as a small CSR whose arcs are local indices, so no global
//! label array is needed. At `l = 2` every arc of the level is a clique.

use super::{merge_positions, ListingPlan, ScratchUsage};
use crate::graph::{Dag, VertexId};
use crate::sink::{CliqueCount, CliqueSink};

pub struct KClistPlan {
    dag: Dag,
    k: usize,
}

#[derive(Default)]
struct Level {
    vertices: Vec<VertexId>,
    offsets: Vec<usize>,
    /// Local indices into `vertices`, ascending per vertex.
    out: Vec<u32>,
}

impl Level {
    fn len(&self) -> usize {
        self.vertices.len()
    }

    fn out(&self, i: usize) -> &[u32] {
        &self.out[self.offsets[i]..self.offsets[i + 1]]
    }

    fn clear(&mut self) {
        self.vertices.clear();
        self.offsets.clear();
        self.offsets.push(0);
        self.out.clear();
    }

    /// The DAG induced by the out-neighbors of local vertex `i` of `parent`.
    fn induce(&mut self, parent: &Level, i: usize) {
        self.clear();
        let sub = parent.out(i);
        self.vertices
            .extend(sub.iter().map(|&j| parent.vertices[j as usize]));
        for &j in sub {
            merge_positions(parent.out(j as usize), sub, |t| self.out.push(t as u32));
            self.offsets.push(self.out.len());
        }
    }
}

pub struct KClistScratch {
    root: Option<VertexId>,
    levels: Vec<Level>,
    clique: Vec<VertexId>,
    peak_ids: usize,
}

impl KClistPlan {
    pub fn new(dag: Dag, k: usize) -> Self {
        assert!(k >= 3, "DAG engines need k >= 3");
        KClistPlan { dag, k }
    }

    fn induce_root(&self, u: VertexId, s: &mut KClistScratch) {
        if s.root == Some(u) {
            return;
        }
        s.root = Some(u);
        let top = &mut s.levels[0];
        top.clear();
        let nu = self.dag.out_neighbors(u);
        top.vertices.extend_from_slice(nu);
        for &x in nu {
            merge_positions(self.dag.out_neighbors(x), nu, |t| top.out.push(t as u32));
            top.offsets.push(top.out.len());
        }
    }

    /// Lists the cliques through local vertex `i` of `levels[0]` at level `l`.
    fn extend<S: CliqueSink + ?Sized>(
        l: usize,
        i: usize,
        levels: &mut [Level],
        clique: &mut Vec<VertexId>,
        peak: &mut usize,
        sink: &mut S,
    ) {
        let (cur, rest) = levels.split_first_mut().expect("one level per depth");
        let v = cur.vertices[i];
        if l == 2 {
            let out = cur.out(i);
            if sink.wants_cliques() {
                clique.push(v);
                for &t in out {
                    clique.push(cur.vertices[t as usize]);
                    sink.report(clique);
                    clique.pop();
                }
                clique.pop();
            } else {
                sink.add(CliqueCount::new(out.len() as u64));
            }
            return;
        }
        let next = &mut rest[0];
        next.induce(cur, i);
        *peak = (*peak).max(next.vertices.len() + next.out.len());
        clique.push(v);
        for j in 0..next.len() {
            Self::extend(l - 1, j, rest, clique, peak, sink);
        }
        clique.pop();
    }
}

impl ListingPlan for KClistPlan {
    type Scratch = KClistScratch;

    fn k(&self) -> usize {
        self.k
    }

    fn dag(&self) -> &Dag {
        &self.dag
    }

    fn scratch(&self) -> KClistScratch {
        KClistScratch {
            root: None,
            levels: (0..self.k - 2).map(|_| Level::default()).collect(),
            clique: Vec::with_capacity(self.k),
            peak_ids: 0,
        }
    }

    fn list_root<S: CliqueSink + ?Sized>(&self, u: VertexId, s: &mut KClistScratch, sink: &mut S) {
        if self.dag.out_degree(u) == 0 {
            return;
        }
        self.induce_root(u, s);
        s.clique.clear();
        s.clique.push(u);
        for i in 0..s.levels[0].len() {
            Self::extend(
                self.k - 1,
                i,
                &mut s.levels,
                &mut s.clique,
                &mut s.peak_ids,
                sink,
            );
        }
    }

    fn list_arc<S: CliqueSink + ?Sized>(&self, arc: usize, s: &mut KClistScratch, sink: &mut S) {
        let u = self.dag.arc_source(arc);
        self.induce_root(u, s);
        s.clique.clear();
        s.clique.push(u);
        let i = arc - self.dag.offsets()[u as usize];
        Self::extend(
            self.k - 1,
            i,
            &mut s.levels,
            &mut s.clique,
            &mut s.peak_ids,
            sink,
        );
    }

    /// Live sub-DAG entries (vertices plus arcs) at the busiest moment of
    /// one level, times the level count. Not bounded by `k * Δ`.
    fn usage(&self, s: &KClistScratch) -> ScratchUsage {
        let top = s
            .levels
            .first()
            .map_or(0, |t| t.vertices.capacity() + t.out.capacity());
        ScratchUsage {
            ids: top + s.peak_ids * (self.k - 2),
            words: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{orient, Graph};
    use crate::listing::OrderingKind;
    use crate::sink::CountSink;

    #[test]
    fn k5_triangles_every_ordering() {
        let g = Graph::from_edges(5, (0..5u32).flat_map(|u| (u + 1..5).map(move |v| (u, v))));
        for kind in OrderingKind::ALL {
            let plan = KClistPlan::new(orient(&g, &kind.order(&g)).unwrap(), 3);
            let mut sink = CountSink::new();
            plan.list_all(&mut sink);
            assert_eq!(sink.count().value(), 10, "{kind}");
        }
    }

    #[test]
    fn path_has_no_triangles() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        let plan = KClistPlan::new(orient(&g, &OrderingKind::Degeneracy.order(&g)).unwrap(), 3);
        let mut sink = CountSink::new();
        plan.list_all(&mut sink);
        assert_eq!(sink.count().value(), 0);
    }
}
