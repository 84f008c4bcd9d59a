//! Degeneracy-ordered listing over per-root color-ordered bitmaps.
//!
//! For each root `u` the out-neighborhood `N+(u)` induces an undirected
//! subgraph `G_u`. It is greedily colored in descending local degree order
//! and oriented from higher to lower color; row `p` of the root's bitmap
//! then holds the lower-colored neighbors of position `p`. A candidate set
//! is a bitmap row, and extending it is one word-wise AND.

use std::cmp::Reverse;

use super::{merge_positions, Decode, ListingPlan, Prune, ScratchUsage};
use crate::graph::{orient, Dag, Graph, VertexId};
use crate::intersect::{
    bit_join, for_each_position, popcount, words_for, BitWord, BitmapAdjacency, MaskTable,
};
use crate::ordering::{degeneracy_ordering, greedy_coloring_by};
use crate::sink::{CliqueCount, CliqueSink};

pub struct BitColPlan<W: BitWord> {
    dag: Dag,
    k: usize,
    prune: Prune,
    word_bits: u32,
    table: Option<MaskTable>,
    _word: std::marker::PhantomData<W>,
}

pub struct BitColScratch<W: BitWord> {
    /// Root whose `G_u` is currently encoded.
    root: Option<VertexId>,
    bitmap: BitmapAdjacency<W>,
    color: Vec<u32>,
    mark: Vec<u32>,
    order: Vec<VertexId>,
    rank: Vec<u32>,
    levels: Vec<Vec<W>>,
    clique: Vec<VertexId>,
}

/// Read-only view handed down the recursion.
struct Frame<'a, W: BitWord> {
    bitmap: &'a BitmapAdjacency<W>,
    color: &'a [u32],
}

impl<W: BitWord> BitColPlan<W> {
    /// Panics unless `k >= 3` and `1 <= word_bits <= W::BITS`.
    pub fn new(dag: Dag, k: usize, prune: Prune, word_bits: u32, decode: Decode) -> Self {
        assert!(k >= 3, "DAG engines need k >= 3");
        assert!((1..=W::BITS).contains(&word_bits));
        let table = match decode {
            Decode::BitScan => None,
            Decode::MaskTable => Some(MaskTable::for_word_bits(word_bits)),
        };
        BitColPlan {
            dag,
            k,
            prune,
            word_bits,
            table,
            _word: std::marker::PhantomData,
        }
    }

    pub fn for_graph(g: &Graph, k: usize, word_bits: u32) -> Self {
        let dag = orient(g, &degeneracy_ordering(g).0).expect("ordering covers the graph");
        BitColPlan::new(dag, k, Prune::ALL, word_bits, Decode::BitScan)
    }

    #[inline]
    fn positions<F: FnMut(usize)>(&self, row: &[W], f: F) {
        match &self.table {
            None => for_each_position(row, self.word_bits, f),
            Some(t) => t.for_each_position(row, self.word_bits, f),
        }
    }

    #[inline]
    fn root_ok(&self, u: VertexId) -> bool {
        !self.prune.out_degree || self.dag.out_degree(u) >= self.k - 1
    }

    /// Builds the color-oriented bitmap of `G_u` unless it is cached.
    fn encode_root(&self, u: VertexId, s: &mut BitColScratch<W>) {
        if s.root == Some(u) {
            return;
        }
        s.root = Some(u);
        let universe = self.dag.out_neighbors(u);
        let d = universe.len();
        let b = &mut s.bitmap;
        b.reset(universe.iter().copied());

        // Undirected G_u first: both directions of every edge.
        for p in 0..d {
            let x = universe[p];
            merge_positions(self.dag.out_neighbors(x), &universe[p + 1..], |q| {
                b.set(p, p + 1 + q);
                b.set(p + 1 + q, p);
            });
        }

        // Greedy coloring in descending local degree, ties by position.
        s.rank.clear();
        s.rank.extend((0..d).map(|p| popcount(b.row(p)) as u32));
        s.order.clear();
        s.order.extend(0..d as VertexId);
        let degree = &s.rank;
        s.order
            .sort_unstable_by_key(|&p| (Reverse(degree[p as usize]), p));
        let word_bits = self.word_bits;
        let table = self.table.as_ref();
        greedy_coloring_by(
            d,
            &s.order,
            |p, f| {
                let row = b.row(p as usize);
                let mut g = |q: usize| f(q as VertexId);
                match table {
                    None => for_each_position(row, word_bits, &mut g),
                    Some(t) => t.for_each_position(row, word_bits, &mut g),
                }
            },
            &mut s.color,
            &mut s.mark,
        );

        // Color ordering: descending color, ties by position. Keep only arcs
        // from a lower to a higher color rank.
        let color = &s.color;
        s.order
            .sort_unstable_by_key(|&p| (Reverse(color[p as usize]), p));
        for (r, &p) in s.order.iter().enumerate() {
            s.rank[p as usize] = r as u32;
        }
        let l = word_bits as usize;
        for p in 0..d {
            let rp = s.rank[p];
            for (i, word) in b.row_mut(p).iter_mut().enumerate() {
                let mut bits = *word;
                while bits != W::zero() {
                    let t = bits.trailing_zeros() as usize;
                    bits = bits & (bits - W::one());
                    if s.rank[i * l + t] < rp {
                        *word = *word & !(W::one() << t);
                    }
                }
            }
        }

        let w = b.words_per_row();
        for level in &mut s.levels {
            level.clear();
            level.resize(w, W::zero());
        }
    }

    /// Adds candidate position `p` of `cand` to the clique at level `l >= 2`.
    #[allow(clippy::too_many_arguments)]
    fn extend<S: CliqueSink + ?Sized>(
        &self,
        f: &Frame<'_, W>,
        l: usize,
        p: usize,
        cand: &[W],
        levels: &mut [Vec<W>],
        clique: &mut Vec<VertexId>,
        sink: &mut S,
    ) {
        if self.prune.color && (f.color[p] as usize) < l {
            return;
        }
        let (next, rest) = levels.split_first_mut().expect("one buffer per level");
        bit_join(f.bitmap.row(p), cand, next);
        let universe = f.bitmap.universe();

        if l == 2 {
            if sink.wants_cliques() {
                clique.push(universe[p]);
                self.positions(next, |q| {
                    clique.push(universe[q]);
                    sink.report(clique);
                    clique.pop();
                });
                clique.pop();
            } else {
                sink.add(CliqueCount::new(popcount(next) as u64));
            }
            return;
        }
        if self.prune.size && popcount(next) < l - 1 {
            return;
        }
        clique.push(universe[p]);
        let next: &[W] = next;
        self.positions(next, |q| self.extend(f, l - 1, q, next, rest, clique, sink));
        clique.pop();
    }

    fn run<S: CliqueSink + ?Sized>(
        &self,
        u: VertexId,
        only: Option<usize>,
        s: &mut BitColScratch<W>,
        sink: &mut S,
    ) {
        if !self.root_ok(u) {
            return;
        }
        self.encode_root(u, s);
        let BitColScratch {
            bitmap,
            color,
            levels,
            clique,
            ..
        } = s;
        let frame = Frame { bitmap, color };
        let root = bitmap.root_row();
        clique.clear();
        clique.push(u);
        match only {
            Some(p) => self.extend(&frame, self.k - 1, p, root, levels, clique, sink),
            None => self.positions(root, |p| {
                self.extend(&frame, self.k - 1, p, root, levels, clique, sink)
            }),
        }
    }
}

impl<W: BitWord> ListingPlan for BitColPlan<W> {
    type Scratch = BitColScratch<W>;

    fn k(&self) -> usize {
        self.k
    }

    fn dag(&self) -> &Dag {
        &self.dag
    }

    fn scratch(&self) -> BitColScratch<W> {
        let delta = self.dag.max_out_degree();
        let w = words_for(delta, self.word_bits);
        let mut bitmap = BitmapAdjacency::new(self.word_bits);
        bitmap.reserve_for(delta);
        BitColScratch {
            root: None,
            bitmap,
            color: Vec::with_capacity(delta),
            mark: Vec::with_capacity(delta + 2),
            order: Vec::with_capacity(delta),
            rank: Vec::with_capacity(delta),
            levels: (0..self.k - 2).map(|_| Vec::with_capacity(w)).collect(),
            clique: Vec::with_capacity(self.k),
        }
    }

    fn list_root<S: CliqueSink + ?Sized>(
        &self,
        u: VertexId,
        s: &mut BitColScratch<W>,
        sink: &mut S,
    ) {
        self.run(u, None, s, sink);
    }

    fn list_arc<S: CliqueSink + ?Sized>(&self, arc: usize, s: &mut BitColScratch<W>, sink: &mut S) {
        let u = self.dag.arc_source(arc);
        let p = arc - self.dag.offsets()[u as usize];
        self.run(u, Some(p), s, sink);
    }

    fn usage(&self, s: &BitColScratch<W>) -> ScratchUsage {
        ScratchUsage {
            ids: 0,
            words: s.bitmap.capacity_words() + s.levels.iter().map(Vec::capacity).sum::<usize>(),
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
    fn complete_graphs_all_widths() {
        for n in 3..10 {
            for kk in 3..=n as usize {
                let want = CliqueCount::binomial(n as u64, kk as u64);
                for bits in [1, 3, 24] {
                    let plan = BitColPlan::<u32>::for_graph(&k(n), kk, bits);
                    let mut sink = CountSink::new();
                    plan.list_all(&mut sink);
                    assert_eq!(sink.count(), want, "n={n} k={kk} L={bits}");
                }
                let plan = BitColPlan::<u128>::for_graph(&k(n), kk, 128);
                let mut sink = CountSink::new();
                plan.list_all(&mut sink);
                assert_eq!(sink.count(), want);
            }
        }
    }

    #[test]
    fn triangle_free_prunes_every_root() {
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)));
        let plan = BitColPlan::<u64>::for_graph(&c6, 3, 64);
        let mut sink = CollectSink::new();
        plan.list_all(&mut sink);
        assert!(sink.cliques.is_empty());
    }

    #[test]
    fn mask_table_decode_matches() {
        let g = k(9);
        let dag = orient(&g, &degeneracy_ordering(&g).0).unwrap();
        let plan = BitColPlan::<u32>::new(dag, 4, Prune::ALL, 24, Decode::MaskTable);
        let mut a = CollectSink::new();
        plan.list_all(&mut a);
        let mut b = CollectSink::new();
        BitColPlan::<u32>::for_graph(&g, 4, 24).list_all(&mut b);
        assert_eq!(a.sorted(), b.sorted());
        assert_eq!(a.cliques.len(), 126);
    }

    #[test]
    fn arcs_reuse_the_root_encoding() {
        let plan = BitColPlan::<u64>::for_graph(&k(7), 4, 64);
        let mut s = plan.scratch();
        let mut sink = CountSink::new();
        for arc in 0..plan.dag().m() {
            plan.list_arc(arc, &mut s, &mut sink);
        }
        assert_eq!(sink.count().value(), 35);
    }
}
