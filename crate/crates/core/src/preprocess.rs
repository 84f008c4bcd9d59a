//! Linear-time reductions applied before listing.
//!
//! [`pre_core`] peels every vertex that cannot sit in a k-clique because its
//! degree drops below `k - 1`; [`pre_list`] reports connected components that
//! are themselves complete graphs and removes them.

use std::collections::VecDeque;

use crate::graph::{Graph, VertexId};
use crate::sink::{CliqueCount, CliqueSink};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReductionReport {
    pub removed_vertices: usize,
    pub removed_components: usize,
    /// Σ C(n_c, k) over removed clique components.
    pub precounted_cliques: CliqueCount,
    /// Whether the removed components' cliques were delivered one by one.
    pub emitted: bool,
}

impl ReductionReport {
    pub fn merge(&mut self, other: &ReductionReport) {
        self.removed_vertices += other.removed_vertices;
        self.removed_components += other.removed_components;
        self.precounted_cliques.merge(other.precounted_cliques);
        self.emitted |= other.emitted;
    }
}

/// Result of a reduction: the surviving graph and where its vertices came from.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub graph: Graph,
    /// `kept[v]` is the id in the input graph of surviving vertex `v`.
    pub kept: Vec<VertexId>,
    pub report: ReductionReport,
}

/// Queue-driven removal of vertices whose degree is below `k - 1`.
///
/// The survivors induce the union of the `(k-1)`-cores of `g`.
pub fn pre_core(g: &Graph, k: usize) -> Reduced {
    let threshold = k.saturating_sub(1);
    let n = g.n();
    let mut degree: Vec<usize> = (0..n as VertexId).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queue = VecDeque::new();

    for v in 0..n {
        if degree[v] < threshold {
            removed[v] = true;
            queue.push_back(v as VertexId);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            let v = v as usize;
            degree[v] = degree[v].saturating_sub(1);
            if degree[v] < threshold && !removed[v] {
                removed[v] = true;
                queue.push_back(v as VertexId);
            }
        }
    }

    let keep: Vec<bool> = removed.iter().map(|&r| !r).collect();
    let (graph, kept) = g.induced(&keep);
    let report = ReductionReport {
        removed_vertices: n - graph.n(),
        ..ReductionReport::default()
    };
    Reduced {
        graph,
        kept,
        report,
    }
}

/// Reports and removes every connected component that is a complete graph
/// on at least `k` vertices.
///
/// In count mode the sink receives `C(n_c, k)` per component; in emit mode
/// it receives every k-subset of the component in lexicographic id order.
/// Meant to run after [`pre_core`], but safe on any graph.
pub fn pre_list<S: CliqueSink + ?Sized>(g: &Graph, k: usize, sink: &mut S) -> Reduced {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut keep = vec![true; n];
    let mut component = Vec::new();
    let mut queue = VecDeque::new();
    let mut report = ReductionReport {
        emitted: sink.wants_cliques(),
        ..ReductionReport::default()
    };

    for start in 0..n {
        if seen[start] {
            continue;
        }
        component.clear();
        seen[start] = true;
        queue.push_back(start as VertexId);
        // Stored arcs: each undirected edge is counted from both endpoints.
        let mut arcs = 0usize;
        while let Some(u) = queue.pop_front() {
            component.push(u);
            arcs += g.degree(u);
            for &v in g.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    queue.push_back(v);
                }
            }
        }
        let nc = component.len();
        let edges = arcs / 2;
        debug_assert_eq!(arcs % 2, 0);
        let is_clique = arcs == nc * (nc - 1);
        debug_assert_eq!(is_clique, edges == nc * (nc - 1) / 2);
        if !is_clique || nc < k.max(1) {
            continue;
        }

        component.sort_unstable();
        let cliques = CliqueCount::binomial(nc as u64, k as u64);
        if sink.wants_cliques() {
            for_each_combination(&component, k, |c| sink.report(c));
        } else {
            sink.add(cliques);
        }
        report.precounted_cliques.merge(cliques);
        report.removed_components += 1;
        report.removed_vertices += nc;
        for &v in &component {
            keep[v as usize] = false;
        }
    }

    let (graph, kept) = g.induced(&keep);
    Reduced {
        graph,
        kept,
        report,
    }
}

/// Calls `f` on every `k`-subset of `items` in lexicographic order.
pub(crate) fn for_each_combination<F>(items: &[VertexId], k: usize, mut f: F)
where
    F: FnMut(&[VertexId]),
{
    let n = items.len();
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<VertexId> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        // Rightmost index that can still move.
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i - 1..k {
            buf[j] = items[idx[j]];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sink::{CollectSink, CountSink};

    fn complete(n: u32, offset: u32) -> Vec<(u32, u32)> {
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u + offset, v + offset)))
            .collect()
    }

    #[test]
    fn k5_unchanged_by_pre_core() {
        let g = Graph::from_edges(5, complete(5, 0));
        let r = pre_core(&g, 4);
        assert_eq!(r.graph, g);
        assert_eq!(r.report.removed_vertices, 0);
    }

    #[test]
    fn pre_core_cascades() {
        // triangle with a tail 2-3-4: k=3 removes 4 then 3
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        let r = pre_core(&g, 3);
        assert_eq!(r.kept, vec![0, 1, 2]);
        assert_eq!(r.report.removed_vertices, 2);
    }

    #[test]
    fn k_beyond_any_core_empties() {
        let g = Graph::from_edges(5, complete(5, 0));
        assert_eq!(pre_core(&g, 7).graph.n(), 0);
    }

    #[test]
    fn k6_plus_c5() {
        let mut edges = complete(6, 0);
        edges.extend((0..5).map(|i| (6 + i, 6 + (i + 1) % 5)));
        let g = Graph::from_edges(11, edges);
        let core = pre_core(&g, 3);
        assert_eq!(core.graph.n(), 11);

        let mut sink = CountSink::new();
        let r = pre_list(&core.graph, 3, &mut sink);
        assert_eq!(sink.count().value(), 20);
        assert_eq!(r.report.precounted_cliques.value(), 20);
        assert_eq!(r.report.removed_components, 1);
        assert_eq!(r.graph.n(), 5);
        assert_eq!(r.graph.m(), 5);
    }

    #[test]
    fn emit_mode_lists_combinations() {
        let g = Graph::from_edges(4, complete(4, 0));
        let mut sink = CollectSink::new();
        let r = pre_list(&g, 3, &mut sink);
        assert!(r.report.emitted);
        assert_eq!(
            sink.cliques,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
    }

    #[test]
    fn small_clique_components_survive() {
        // K3 cannot hold a 4-clique, so the explicit n_c >= k guard keeps it.
        let g = Graph::from_edges(3, complete(3, 0));
        let mut sink = CountSink::new();
        let r = pre_list(&g, 4, &mut sink);
        assert_eq!(r.graph.n(), 3);
        assert_eq!(sink.count().value(), 0);
    }

    #[test]
    fn combinations_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(&[1, 4, 6, 9], 2, |c| seen.push(c.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![1, 4],
                vec![1, 6],
                vec![1, 9],
                vec![4, 6],
                vec![4, 9],
                vec![6, 9]
            ]
        );
    }
}
