//! Bitmap-encoded out-neighborhoods.
//!
//! For a root `u` with out-neighbors `universe = [x_0, x_1, ...]`, position
//! `p` stands for `x_p`. Rows hold `L` payload bits per word: position `p`
//! lives in word `p / L`, bit `p % L` (bit 0 is the first position). Row 0
//! is the root row with every position set; row `p + 1` holds the
//! out-neighbors of `x_p` inside the induced DAG. Payload bits `>= L` of a
//! word and bits past the last position are always zero.

use std::fmt::Debug;

use num_traits::{PrimInt, Unsigned};

use crate::graph::VertexId;

/// Unsigned machine word usable as bitmap storage.
pub trait BitWord: PrimInt + Unsigned + Debug + Default + Send + Sync + 'static {
    const BITS: u32;
}

impl BitWord for u32 {
    const BITS: u32 = 32;
}

impl BitWord for u64 {
    const BITS: u32 = 64;
}

impl BitWord for u128 {
    const BITS: u32 = 128;
}

/// Word with the low `bits` bits set.
#[inline]
pub fn low_mask<W: BitWord>(bits: u32) -> W {
    if bits >= W::BITS {
        W::max_value()
    } else {
        (W::one() << bits as usize) - W::one()
    }
}

/// Words needed for `positions` positions at `word_bits` payload bits each.
#[inline]
pub fn words_for(positions: usize, word_bits: u32) -> usize {
    positions.div_ceil(word_bits as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitmapAdjacency<W: BitWord> {
    word_bits: u32,
    words_per_row: usize,
    rows: Vec<W>,
    universe: Vec<VertexId>,
}

impl<W: BitWord> BitmapAdjacency<W> {
    /// An empty encoding. Panics unless `1 <= word_bits <= W::BITS`.
    pub fn new(word_bits: u32) -> Self {
        assert!(
            (1..=W::BITS).contains(&word_bits),
            "word_bits must be in 1..={}, got {word_bits}",
            W::BITS
        );
        BitmapAdjacency {
            word_bits,
            words_per_row: 0,
            rows: Vec::new(),
            universe: Vec::new(),
        }
    }

    /// Encodes `universe` where `out[p]` lists the positions reachable from
    /// position `p`.
    pub fn encode<P: AsRef<[usize]>>(universe: &[VertexId], out: &[P], word_bits: u32) -> Self {
        assert_eq!(universe.len(), out.len());
        let mut b = BitmapAdjacency::new(word_bits);
        b.reset(universe.iter().copied());
        for (p, targets) in out.iter().enumerate() {
            for &q in targets.as_ref() {
                b.set(p, q);
            }
        }
        b
    }

    /// Starts a new encoding over `universe`, keeping the allocations: the
    /// root row is filled and every other row cleared.
    pub fn reset<I: IntoIterator<Item = VertexId>>(&mut self, universe: I) {
        self.universe.clear();
        self.universe.extend(universe);
        let d = self.universe.len();
        let w = words_for(d, self.word_bits);
        self.words_per_row = w;
        self.rows.clear();
        self.rows.resize((d + 1) * w, W::zero());
        let full = low_mask::<W>(self.word_bits);
        for i in 0..w {
            let bits = (d - i * self.word_bits as usize).min(self.word_bits as usize);
            self.rows[i] = if bits as u32 == self.word_bits {
                full
            } else {
                low_mask(bits as u32)
            };
        }
    }

    /// Marks position `to` as an out-neighbor of position `from`.
    #[inline]
    pub fn set(&mut self, from: usize, to: usize) {
        debug_assert!(to < self.universe.len());
        let l = self.word_bits as usize;
        let idx = (from + 1) * self.words_per_row + to / l;
        self.rows[idx] = self.rows[idx] | (W::one() << (to % l));
    }

    #[inline]
    pub fn word_bits(&self) -> u32 {
        self.word_bits
    }

    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    /// Number of positions (the root's out-degree).
    #[inline]
    pub fn len(&self) -> usize {
        self.universe.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn universe(&self) -> &[VertexId] {
        &self.universe
    }

    /// The root row with all positions set.
    #[inline]
    pub fn root_row(&self) -> &[W] {
        &self.rows[..self.words_per_row]
    }

    /// Row of position `p`.
    #[inline]
    pub fn row(&self, p: usize) -> &[W] {
        let w = self.words_per_row;
        &self.rows[(p + 1) * w..(p + 2) * w]
    }

    /// Mutable row of position `p`.
    #[inline]
    pub fn row_mut(&mut self, p: usize) -> &mut [W] {
        let w = self.words_per_row;
        &mut self.rows[(p + 1) * w..(p + 2) * w]
    }

    /// Removes position `to` from the row of `from`.
    #[inline]
    pub fn clear(&mut self, from: usize, to: usize) {
        let l = self.word_bits as usize;
        let idx = (from + 1) * self.words_per_row + to / l;
        self.rows[idx] = self.rows[idx] & !(W::one() << (to % l));
    }

    /// Words held by all rows, root row included.
    pub fn stored_words(&self) -> usize {
        self.rows.len()
    }

    /// Reserves exactly enough for universes of up to `positions` entries,
    /// so later [`reset`](Self::reset) calls never reallocate.
    pub fn reserve_for(&mut self, positions: usize) {
        let words = (positions + 1) * words_for(positions, self.word_bits);
        self.rows
            .reserve_exact(words.saturating_sub(self.rows.len()));
        self.universe
            .reserve_exact(positions.saturating_sub(self.universe.len()));
    }

    /// Allocated row storage in words.
    pub fn capacity_words(&self) -> usize {
        self.rows.capacity()
    }
}

/// `out[i] = row[i] & cand[i]`. Panics on a length mismatch.
#[inline]
pub fn bit_join<W: BitWord>(row: &[W], cand: &[W], out: &mut [W]) {
    assert!(
        row.len() == cand.len() && cand.len() == out.len(),
        "bit_join length mismatch: {} / {} / {}",
        row.len(),
        cand.len(),
        out.len()
    );
    for ((o, &a), &b) in out.iter_mut().zip(row).zip(cand) {
        *o = a & b;
    }
}

/// Set bits in `row`.
#[inline]
pub fn popcount<W: BitWord>(row: &[W]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// Calls `f` on every set position of `row`, ascending.
#[inline]
pub fn for_each_position<W: BitWord, F: FnMut(usize)>(row: &[W], word_bits: u32, mut f: F) {
    let l = word_bits as usize;
    for (i, &word) in row.iter().enumerate() {
        let mut w = word;
        while w != W::zero() {
            f(i * l + w.trailing_zeros() as usize);
            w = w & (w - W::one());
        }
    }
}

/// Ascending ids of the set positions of `row`, by bit scan.
pub fn bit_decode<W: BitWord>(
    row: &[W],
    word_bits: u32,
    universe: &[VertexId],
    out: &mut Vec<VertexId>,
) {
    out.clear();
    for_each_position(row, word_bits, |p| out.push(universe[p]));
}

/// Lookup table from a `segment_bits`-wide word slice to the positions set
/// in it. Decoding a word takes `ceil(L / segment_bits)` lookups, so the
/// table stays at `2^segment_bits` entries whatever `L` is.
#[derive(Clone, Debug)]
pub struct MaskTable {
    segment_bits: u32,
    offsets: Vec<u32>,
    positions: Vec<u8>,
}

impl MaskTable {
    /// Panics unless `1 <= segment_bits <= 16`.
    pub fn new(segment_bits: u32) -> Self {
        assert!((1..=16).contains(&segment_bits));
        let size = 1usize << segment_bits;
        let mut offsets = Vec::with_capacity(size + 1);
        let mut positions = Vec::new();
        offsets.push(0);
        for value in 0..size {
            for bit in 0..segment_bits {
                if value >> bit & 1 == 1 {
                    positions.push(bit as u8);
                }
            }
            offsets.push(positions.len() as u32);
        }
        MaskTable {
            segment_bits,
            offsets,
            positions,
        }
    }

    /// Table sized for payload width `word_bits`: one segment when
    /// `word_bits <= 8`, byte segments otherwise.
    pub fn for_word_bits(word_bits: u32) -> Self {
        MaskTable::new(word_bits.clamp(1, 8))
    }

    pub fn segment_bits(&self) -> u32 {
        self.segment_bits
    }

    /// Offsets of the bits set in `value`.
    #[inline]
    pub fn entry(&self, value: usize) -> &[u8] {
        &self.positions[self.offsets[value] as usize..self.offsets[value + 1] as usize]
    }

    /// Same contract as [`for_each_position`].
    #[inline]
    pub fn for_each_position<W: BitWord, F: FnMut(usize)>(
        &self,
        row: &[W],
        word_bits: u32,
        mut f: F,
    ) {
        let seg = self.segment_bits;
        let mask = low_mask::<W>(seg);
        let l = word_bits as usize;
        for (i, &word) in row.iter().enumerate() {
            if word == W::zero() {
                continue;
            }
            let mut shift = 0;
            while shift < word_bits {
                let value = ((word >> shift as usize) & mask).to_usize().unwrap();
                let base = i * l + shift as usize;
                for &b in self.entry(value) {
                    f(base + b as usize);
                }
                shift += seg;
            }
        }
    }

    /// Same contract as [`bit_decode`].
    pub fn decode<W: BitWord>(
        &self,
        row: &[W],
        word_bits: u32,
        universe: &[VertexId],
        out: &mut Vec<VertexId>,
    ) {
        out.clear();
        self.for_each_position(row, word_bits, |p| out.push(universe[p]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The fig7 DAG over v1..v6 (positions 0..5); arcs point to lower colors.
    fn fig7() -> BitmapAdjacency<u32> {
        let out: Vec<Vec<usize>> = vec![
            vec![],           // v1
            vec![0],          // v2
            vec![0, 1, 4],    // v3
            vec![0, 1, 2, 5], // v4
            vec![0],          // v5
            vec![0, 1, 4],    // v6
        ];
        BitmapAdjacency::encode(&[1, 2, 3, 4, 5, 6], &out, 3)
    }

    #[test]
    fn table_three() {
        let b = fig7();
        assert_eq!(b.words_per_row(), 2);
        assert_eq!(b.root_row(), &[7, 7]);
        let rows: Vec<&[u32]> = (0..6).map(|p| b.row(p)).collect();
        assert_eq!(
            rows,
            vec![&[0, 0][..], &[1, 0], &[3, 2], &[7, 4], &[1, 0], &[3, 2]]
        );
    }

    #[test]
    fn join_and_decode() {
        let b = fig7();
        let mut out = [0u32; 2];
        bit_join(b.row(2), b.row(3), &mut out);
        assert_eq!(out, [3, 0]);
        let mut ids = Vec::new();
        bit_decode(&out, 3, b.universe(), &mut ids);
        assert_eq!(ids, vec![1, 2]);
        MaskTable::for_word_bits(3).decode(&out, 3, b.universe(), &mut ids);
        assert_eq!(ids, vec![1, 2]);
        bit_decode(&[0u32, 0], 3, b.universe(), &mut ids);
        assert!(ids.is_empty());
    }

    #[test]
    fn join_with_root_row_is_identity() {
        let b = fig7();
        let mut out = [0u32; 2];
        bit_join(b.row(3), b.root_row(), &mut out);
        assert_eq!(out, [7, 4]);
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn join_rejects_mismatch() {
        let mut out = [0u64; 2];
        bit_join(&[1u64, 2], &[1u64], &mut out);
    }

    #[test]
    fn mask_table_three_bits() {
        let t = MaskTable::new(3);
        assert_eq!(t.entry(1), &[0]);
        assert_eq!(t.entry(3), &[0, 1]);
        assert_eq!(t.entry(5), &[0, 2]);
        assert_eq!(t.entry(7), &[0, 1, 2]);
        assert!(t.entry(0).is_empty());
    }

    #[test]
    fn empty_universe_has_no_words() {
        let b = BitmapAdjacency::<u64>::encode::<Vec<usize>>(&[], &[], 64);
        assert_eq!(b.words_per_row(), 0);
        assert_eq!(b.stored_words(), 0);
    }

    #[test]
    fn root_row_tail_is_clean() {
        let mut b = BitmapAdjacency::<u64>::new(24);
        b.reset(0..50);
        assert_eq!(b.root_row(), &[0xFF_FFFF, 0xFF_FFFF, 0b11]);
        assert_eq!(popcount(b.root_row()), 50);
        let mut b = BitmapAdjacency::<u128>::new(128);
        b.reset(0..128);
        assert_eq!(b.root_row(), &[u128::MAX]);
    }

    #[test]
    fn mask_table_decodes_wide_words() {
        let row = [0x8000_0001_0000_0003u64, 1 << 40];
        let universe: Vec<u32> = (100..228).collect();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        bit_decode(&row, 64, &universe, &mut a);
        MaskTable::for_word_bits(64).decode(&row, 64, &universe, &mut b);
        assert_eq!(a, vec![100, 101, 132, 163, 204]);
        assert_eq!(a, b);
    }
}
