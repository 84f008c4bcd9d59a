//! Slow, obviously-correct reference implementations.

use std::collections::{BTreeSet, HashSet};

use crate::graph::{Graph, VertexId};

/// Degeneracy by repeatedly deleting a vertex of minimum residual degree,
/// scanning all vertices each step.
pub fn naive_degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut best = 0;
    for _ in 0..n {
        let residual = |v: usize| {
            g.neighbors(v as VertexId)
                .iter()
                .filter(|&&w| alive[w as usize])
                .count()
        };
        let (v, d) = (0..n)
            .filter(|&v| alive[v])
            .map(|v| (v, residual(v)))
            .min_by_key(|&(v, d)| (d, v))
            .expect("a vertex is left");
        best = best.max(d);
        alive[v] = false;
    }
    best
}

/// Vertices left after filtering `degree < k - 1` until nothing changes.
pub fn fixed_point_core(g: &Graph, k: usize) -> Vec<VertexId> {
    let mut alive: BTreeSet<VertexId> = (0..g.n() as VertexId).collect();
    loop {
        let next: BTreeSet<VertexId> = alive
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).iter().filter(|w| alive.contains(w)).count() + 1 >= k)
            .collect();
        if next == alive {
            return alive.into_iter().collect();
        }
        alive = next;
    }
}

/// Components that are complete graphs on at least `k` vertices, each as
/// an ascending vertex list, checked pair by pair.
pub fn clique_components(g: &Graph, k: usize) -> Vec<Vec<VertexId>> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut stack = vec![s as VertexId];
        let mut members = Vec::new();
        comp[s] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for &w in g.neighbors(v) {
                if comp[w as usize] == usize::MAX {
                    comp[w as usize] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }
    groups
        .into_iter()
        .filter(|c| {
            c.len() >= k.max(1)
                && c.iter()
                    .enumerate()
                    .all(|(i, &a)| c[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        })
        .collect()
}

/// Intersection through hash membership, ascending.
pub fn hash_intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let set: HashSet<u32> = b.iter().copied().collect();
    let mut out: Vec<u32> = a.iter().copied().filter(|x| set.contains(x)).collect();
    out.sort_unstable();
    out
}

/// Positions whose bit is set, testing one bit at a time.
pub fn naive_positions(row: &[u64], word_bits: u32) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &w) in row.iter().enumerate() {
        for b in 0..word_bits {
            if (w >> b) & 1 == 1 {
                out.push(i * word_bits as usize + b as usize);
            }
        }
    }
    out
}

/// All k-cliques by growing sorted tuples one common neighbor at a time,
/// as a set of ascending tuples.
pub fn clique_set(g: &Graph, k: usize) -> BTreeSet<Vec<VertexId>> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<VertexId>> = (0..g.n() as VertexId).map(|v| vec![v]).collect();
    if k == 0 {
        return out;
    }
    while let Some(t) = stack.pop() {
        if t.len() == k {
            out.insert(t);
            continue;
        }
        let last = *t.last().unwrap();
        for w in last + 1..g.n() as VertexId {
            if t.iter().all(|&x| g.has_edge(x, w)) {
                let mut next = t.clone();
                next.push(w);
                stack.push(next);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracy_of_small_graphs() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(naive_degeneracy(&k4), 3);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(naive_degeneracy(&path), 1);
    }

    #[test]
    fn core_filter_cascades() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        assert_eq!(fixed_point_core(&g, 3), vec![0, 1, 2]);
    }

    #[test]
    fn clique_set_of_k4() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(clique_set(&k4, 3).len(), 4);
        assert_eq!(clique_set(&k4, 4).len(), 1);
    }

    #[test]
    fn naive_positions_respects_width() {
        assert_eq!(naive_positions(&[0b101, 0b1], 3), vec![0, 2, 3]);
    }
}
