//! Sorted-set intersection kernels.
//!
//! Inputs are strictly ascending slices. Every kernel clears `out` and then
//! writes the intersection in ascending order; none of them touch their
//! inputs. The block kernels must agree with [`merge_intersect`] on every
//! input, which the tests check differentially.

/// Elements compared per block by [`block_merge_intersect`].
pub const BLOCK: usize = 4;

/// Two-pointer merge join, `O(|a| + |b|)`.
pub fn merge_intersect<T: Copy + Ord>(a: &[T], b: &[T], out: &mut Vec<T>) -> usize {
    out.clear();
    merge_tail(a, b, out);
    out.len()
}

#[inline]
fn merge_tail<T: Copy + Ord>(a: &[T], b: &[T], out: &mut Vec<T>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        if x == y {
            out.push(x);
            i += 1;
            j += 1;
        } else {
            i += (x < y) as usize;
            j += (y < x) as usize;
        }
    }
}

/// Block-wise merge join over `u32` ids.
///
/// Loads a block of [`BLOCK`] ids from each side, tests all pairs for
/// equality through `BLOCK - 1` cyclic rotations of the `b` block, stores
/// the matches, and then advances whichever side has the smaller block tail
/// (both sides when the tails are equal). Remainders shorter than a block
/// fall through to the scalar merge. On x86_64 the block step runs on SSE2,
/// elsewhere on a portable lane loop.
pub fn block_merge_intersect(a: &[u32], b: &[u32], out: &mut Vec<u32>) -> usize {
    out.clear();
    #[cfg(target_arch = "x86_64")]
    let (i, j) = {
        // SAFETY: SSE2 is part of the x86_64 baseline.
        unsafe { sse2::blocks(a, b, out) }
    };
    #[cfg(not(target_arch = "x86_64"))]
    let (i, j) = blocks_portable::<BLOCK>(a, b, out);
    merge_tail(&a[i..], &b[j..], out);
    out.len()
}

/// Portable block merge with a compile-time block width.
///
/// Same protocol as [`block_merge_intersect`]; widths 4, 8 and 16 are the
/// supported variants.
pub fn block_merge_intersect_width<const B: usize>(
    a: &[u32],
    b: &[u32],
    out: &mut Vec<u32>,
) -> usize {
    out.clear();
    let (i, j) = blocks_portable::<B>(a, b, out);
    merge_tail(&a[i..], &b[j..], out);
    out.len()
}

/// Runs the block phase and returns where the scalar remainder starts.
#[inline]
fn blocks_portable<const B: usize>(a: &[u32], b: &[u32], out: &mut Vec<u32>) -> (usize, usize) {
    let (mut i, mut j) = (0, 0);
    while i + B <= a.len() && j + B <= b.len() {
        let va: &[u32; B] = a[i..i + B].try_into().unwrap();
        let vb: &[u32; B] = b[j..j + B].try_into().unwrap();
        let mut hit = [false; B];
        for rot in 0..B {
            for lane in 0..B {
                hit[lane] |= va[lane] == vb[(lane + rot) % B];
            }
        }
        for lane in 0..B {
            if hit[lane] {
                out.push(va[lane]);
            }
        }
        let (ta, tb) = (va[B - 1], vb[B - 1]);
        i += if ta <= tb { B } else { 0 };
        j += if tb <= ta { B } else { 0 };
    }
    (i, j)
}

#[cfg(target_arch = "x86_64")]
mod sse2 {
    use std::arch::x86_64::*;

    /// Block phase with 128-bit registers; returns where the remainder starts.
    #[target_feature(enable = "sse2")]
    pub(super) unsafe fn blocks(a: &[u32], b: &[u32], out: &mut Vec<u32>) -> (usize, usize) {
        let (mut i, mut j) = (0, 0);
        while i + 4 <= a.len() && j + 4 <= b.len() {
            let va = _mm_loadu_si128(a.as_ptr().add(i) as *const __m128i);
            let vb = _mm_loadu_si128(b.as_ptr().add(j) as *const __m128i);
            // rotations of vb by 1, 2, 3 lanes
            let r1 = _mm_shuffle_epi32::<0b00_11_10_01>(vb);
            let r2 = _mm_shuffle_epi32::<0b01_00_11_10>(vb);
            let r3 = _mm_shuffle_epi32::<0b10_01_00_11>(vb);
            let eq = _mm_or_si128(
                _mm_or_si128(_mm_cmpeq_epi32(va, vb), _mm_cmpeq_epi32(va, r1)),
                _mm_or_si128(_mm_cmpeq_epi32(va, r2), _mm_cmpeq_epi32(va, r3)),
            );
            let mut mask = _mm_movemask_ps(_mm_castsi128_ps(eq)) as u32;
            while mask != 0 {
                let lane = mask.trailing_zeros() as usize;
                out.push(*a.get_unchecked(i + lane));
                mask &= mask - 1;
            }
            let ta = *a.get_unchecked(i + 3);
            let tb = *b.get_unchecked(j + 3);
            i += if ta <= tb { 4 } else { 0 };
            j += if tb <= ta { 4 } else { 0 };
        }
        (i, j)
    }
}

/// Exponential probe plus binary search for each element of the shorter
/// side; `O(|a| log |b|)`. Pays off only when `|a| << |b|`.
pub fn galloping_intersect<T: Copy + Ord>(a: &[T], b: &[T], out: &mut Vec<T>) -> usize {
    out.clear();
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut base = 0;
    for &x in small {
        let rest = &large[base..];
        // Grow the window until its last element reaches x.
        let mut hi = 1;
        while hi < rest.len() && rest[hi - 1] < x {
            hi *= 2;
        }
        let hi = hi.min(rest.len());
        let lo = hi / 2;
        let idx = lo + rest[lo..hi].partition_point(|&y| y < x);
        if idx < rest.len() && rest[idx] == x {
            out.push(x);
            base += idx + 1;
        } else {
            base += idx;
        }
        if base >= large.len() {
            break;
        }
    }
    out.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(a: &[u32], b: &[u32]) -> [Vec<u32>; 6] {
        let mut o = [vec![], vec![], vec![], vec![], vec![], vec![]];
        merge_intersect(a, b, &mut o[0]);
        block_merge_intersect(a, b, &mut o[1]);
        galloping_intersect(a, b, &mut o[2]);
        block_merge_intersect_width::<4>(a, b, &mut o[3]);
        block_merge_intersect_width::<8>(a, b, &mut o[4]);
        block_merge_intersect_width::<16>(a, b, &mut o[5]);
        o
    }

    #[test]
    fn small_examples() {
        for out in all(&[1, 3, 5], &[3, 5, 7]) {
            assert_eq!(out, vec![3, 5]);
        }
        for out in all(&[1, 2, 3, 5], &[1, 3, 4, 5]) {
            assert_eq!(out, vec![1, 3, 5]);
        }
    }

    #[test]
    fn rotation_block_with_equal_tails() {
        // One block each; matches surface only under rotation and the tails
        // are equal, so both sides advance past the block at once.
        let a = [1, 2, 3, 5];
        let b = [1, 3, 4, 5];
        let mut out = Vec::new();
        let (i, j) = blocks_portable::<4>(&a, &b, &mut out);
        assert_eq!(out, vec![1, 3, 5]);
        assert_eq!((i, j), (4, 4));
        #[cfg(target_arch = "x86_64")]
        {
            let mut out = Vec::new();
            let (i, j) = unsafe { sse2::blocks(&a, &b, &mut out) };
            assert_eq!(out, vec![1, 3, 5]);
            assert_eq!((i, j), (4, 4));
        }
    }

    #[test]
    fn short_inputs_take_scalar_path() {
        let a = [2, 9];
        let b: Vec<u32> = (0..40).collect();
        let mut out = Vec::new();
        assert_eq!(blocks_portable::<4>(&a, &b, &mut out), (0, 0));
        for out in all(&a, &b) {
            assert_eq!(out, vec![2, 9]);
        }
    }

    #[test]
    fn galloping_examples() {
        let b: Vec<u32> = (1..=100).collect();
        let mut out = Vec::new();
        galloping_intersect(&[5], &b, &mut out);
        assert_eq!(out, vec![5]);
        galloping_intersect(&[], &b, &mut out);
        assert!(out.is_empty());
        galloping_intersect(&[0, 100, 101], &b, &mut out);
        assert_eq!(out, vec![100]);
    }

    #[test]
    fn empty_disjoint_identical() {
        let x: Vec<u32> = (0..37).map(|v| v * 3).collect();
        let y: Vec<u32> = (0..37).map(|v| v * 3 + 1).collect();
        for out in all(&x, &x) {
            assert_eq!(out, x);
        }
        for out in all(&x, &y) {
            assert!(out.is_empty());
        }
        for out in all(&[], &x) {
            assert!(out.is_empty());
        }
    }
}
