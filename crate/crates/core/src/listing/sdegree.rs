//! Degree-ordered listing with block-merge intersections.

use super::{ListingPlan, Prune, ScratchUsage};
use crate::graph::{orient, Dag, Graph, VertexId};
use crate::intersect::block_merge_intersect;
use crate::ordering::degree_ordering;
use crate::sink::{CliqueCount, CliqueSink};

pub struct SDegreePlan {
    dag: Dag,
    k: usize,
    prune: Prune,
}

/// One candidate buffer per level below the root, each of capacity Δ.
pub struct SDegreeScratch {
    levels: Vec<Vec<VertexId>>,
    clique: Vec<VertexId>,
}

impl SDegreePlan {
    /// `dag` should come from the degree ordering; any ordering is correct.
    pub fn new(dag: Dag, k: usize, prune: Prune) -> Self {
        assert!(k >= 3, "DAG engines need k >= 3");
        SDegreePlan { dag, k, prune }
    }

    pub fn for_graph(g: &Graph, k: usize) -> Self {
        let dag = orient(g, &degree_ordering(g)).expect("ordering covers the graph");
        SDegreePlan::new(dag, k, Prune::ALL)
    }

    #[inline]
    fn root_ok(&self, u: VertexId) -> bool {
        !self.prune.out_degree || self.dag.out_degree(u) >= self.k - 1
    }

    /// Adds candidate `v` of `cand` to the clique at level `l >= 2`.
    fn extend<S: CliqueSink + ?Sized>(
        &self,
        l: usize,
        v: VertexId,
        cand: &[VertexId],
        levels: &mut [Vec<VertexId>],
        clique: &mut Vec<VertexId>,
        sink: &mut S,
    ) {
        let nv = self.dag.out_neighbors(v);
        if self.prune.out_degree && nv.len() <= l - 2 {
            return;
        }
        let (next, rest) = levels.split_first_mut().expect("one buffer per level");
        block_merge_intersect(nv, cand, next);

        if l == 2 {
            if sink.wants_cliques() {
                clique.push(v);
                for &w in next.iter() {
                    clique.push(w);
                    sink.report(clique);
                    clique.pop();
                }
                clique.pop();
            } else {
                sink.add(CliqueCount::new(next.len() as u64));
            }
            return;
        }
        if self.prune.size && next.len() <= l - 2 {
            return;
        }
        clique.push(v);
        let next: &[VertexId] = next;
        for &w in next {
            self.extend(l - 1, w, next, rest, clique, sink);
        }
        clique.pop();
    }
}

impl ListingPlan for SDegreePlan {
    type Scratch = SDegreeScratch;

    fn k(&self) -> usize {
        self.k
    }

    fn dag(&self) -> &Dag {
        &self.dag
    }

    fn scratch(&self) -> SDegreeScratch {
        let delta = self.dag.max_out_degree();
        SDegreeScratch {
            levels: (0..self.k - 2).map(|_| Vec::with_capacity(delta)).collect(),
            clique: Vec::with_capacity(self.k),
        }
    }

    fn list_root<S: CliqueSink + ?Sized>(&self, u: VertexId, s: &mut SDegreeScratch, sink: &mut S) {
        if !self.root_ok(u) {
            return;
        }
        let nu = self.dag.out_neighbors(u);
        s.clique.clear();
        s.clique.push(u);
        for &v in nu {
            self.extend(self.k - 1, v, nu, &mut s.levels, &mut s.clique, sink);
        }
    }

    fn list_arc<S: CliqueSink + ?Sized>(&self, arc: usize, s: &mut SDegreeScratch, sink: &mut S) {
        let u = self.dag.arc_source(arc);
        if !self.root_ok(u) {
            return;
        }
        let nu = self.dag.out_neighbors(u);
        let v = nu[arc - self.dag.offsets()[u as usize]];
        s.clique.clear();
        s.clique.push(u);
        self.extend(self.k - 1, v, nu, &mut s.levels, &mut s.clique, sink);
    }

    fn usage(&self, s: &SDegreeScratch) -> ScratchUsage {
        ScratchUsage {
            ids: s.levels.iter().map(Vec::capacity).sum(),
            words: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sink::{CollectSink, CountSink};

    fn k(n: u32) -> Graph {
        Graph::from_edges(
            n as usize,
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
        )
    }

    #[test]
    fn complete_graphs() {
        for n in 3..9 {
            for kk in 3..=n as usize {
                let plan = SDegreePlan::for_graph(&k(n), kk);
                let mut sink = CountSink::new();
                plan.list_all(&mut sink);
                assert_eq!(sink.count(), CliqueCount::binomial(n as u64, kk as u64));
            }
        }
    }

    #[test]
    fn emission_ascends_in_rank() {
        let plan = SDegreePlan::for_graph(&k(7), 4);
        let mut sink = CollectSink::new();
        plan.list_all(&mut sink);
        assert_eq!(sink.cliques.len(), 35);
        for c in &sink.cliques {
            assert!(c.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn arcs_partition_roots() {
        let plan = SDegreePlan::for_graph(&k(6), 3);
        let mut s = plan.scratch();
        let mut sink = CountSink::new();
        for arc in 0..plan.dag().m() {
            plan.list_arc(arc, &mut s, &mut sink);
        }
        assert_eq!(sink.count().value(), 20);
    }
}
