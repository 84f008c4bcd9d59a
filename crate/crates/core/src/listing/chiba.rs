//! Chiba-Nishizeki listing on the undirected graph.
//!
//! At each level the vertices are visited in descending degree; the
//! subgraph induced by a vertex's remaining neighbors is searched one level
//! deeper, and the vertex is then deleted. The deletion step is what makes
//! the method inherently sequential.

use std::cmp::Reverse;
use std::time::Instant;

use crate::graph::{Graph, VertexId};
use crate::sink::CliqueSink;

/// A subgraph with local ids `0..n`; `ids` maps back to the caller's graph.
struct Local {
    ids: Vec<VertexId>,
    adj: Vec<Vec<u32>>,
}

impl Local {
    fn from_graph(g: &Graph) -> Self {
        Local {
            ids: (0..g.n() as VertexId).collect(),
            adj: (0..g.n() as VertexId)
                .map(|v| g.neighbors(v).to_vec())
                .collect(),
        }
    }

    /// The subgraph induced by the alive neighbors of `v`.
    fn induce(&self, v: usize, alive: &[bool]) -> Local {
        let members: Vec<u32> = self.adj[v]
            .iter()
            .copied()
            .filter(|&w| alive[w as usize])
            .collect();
        let adj = members
            .iter()
            .map(|&w| {
                // Neighbors of w among `members`, as indices into `members`.
                let mut out = Vec::new();
                let (a, b) = (&self.adj[w as usize], &members);
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            out.push(j as u32);
                            i += 1;
                            j += 1;
                        }
                    }
                }
                out
            })
            .collect();
        Local {
            ids: members.iter().map(|&w| self.ids[w as usize]).collect(),
            adj,
        }
    }
}

/// Lists every k-clique of `g` (ids of `g`) into `sink`, `k >= 2`.
///
/// Returns true if `deadline` passed before all top-level vertices were
/// processed.
pub fn chiba_nishizeki<S: CliqueSink + ?Sized>(
    g: &Graph,
    k: usize,
    deadline: Option<Instant>,
    sink: &mut S,
) -> bool {
    assert!(k >= 2, "k must be at least 2");
    let mut clique = Vec::with_capacity(k);
    search(&Local::from_graph(g), k, &mut clique, deadline, sink)
}

fn search<S: CliqueSink + ?Sized>(
    g: &Local,
    l: usize,
    clique: &mut Vec<VertexId>,
    deadline: Option<Instant>,
    sink: &mut S,
) -> bool {
    let n = g.ids.len();
    if l == 2 {
        for a in 0..n {
            for &b in &g.adj[a] {
                if (b as usize) > a {
                    clique.push(g.ids[a]);
                    clique.push(g.ids[b as usize]);
                    sink.report(clique);
                    clique.truncate(clique.len() - 2);
                }
            }
        }
        return false;
    }
    if n < l {
        return false;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (Reverse(g.adj[v].len()), v));
    let mut alive = vec![true; n];
    for v in order {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return true;
        }
        let sub = g.induce(v, &alive);
        clique.push(g.ids[v]);
        search(&sub, l - 1, clique, None, sink);
        clique.pop();
        alive[v] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sink::{CollectSink, CountSink};

    #[test]
    fn triangle() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        let mut sink = CountSink::new();
        chiba_nishizeki(&g, 3, None, &mut sink);
        assert_eq!(sink.count().value(), 1);
    }

    #[test]
    fn k6_fours_are_distinct() {
        let g = Graph::from_edges(6, (0..6u32).flat_map(|u| (u + 1..6).map(move |v| (u, v))));
        let mut sink = CollectSink::new();
        chiba_nishizeki(&g, 4, None, &mut sink);
        let sorted = sink.sorted();
        assert_eq!(sorted.len(), 15);
        assert!(sorted.windows(2).all(|w| w[0] != w[1]));
    }

    #[test]
    fn expired_deadline_stops_early() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)]);
        let mut sink = CountSink::new();
        assert!(chiba_nishizeki(&g, 3, Some(Instant::now()), &mut sink));
        assert_eq!(sink.count().value(), 0);
    }
}
