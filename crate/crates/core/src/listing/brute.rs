//! Exhaustive k-subset enumeration, the reference every engine is tested
//! against.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::sink::{CliqueCount, CliqueSink};

/// Graphs up to this many vertices are always accepted.
pub const BRUTE_FORCE_MAX_N: usize = 30;
/// Larger graphs are accepted while `C(n, k)` stays at or below this.
pub const BRUTE_FORCE_MAX_SUBSETS: u64 = 10_000_000;

/// Tests every k-subset of `g` in lexicographic order and reports the
/// cliques. Refuses instances beyond the guard.
pub fn brute_force<S: CliqueSink + ?Sized>(
    g: &Graph,
    k: usize,
    sink: &mut S,
) -> Result<CliqueCount> {
    let n = g.n();
    let subsets = CliqueCount::binomial(n as u64, k as u64);
    if n > BRUTE_FORCE_MAX_N
        && (subsets.is_saturated() || subsets.value() > BRUTE_FORCE_MAX_SUBSETS)
    {
        return Err(Error::GuardExceeded {
            n,
            k,
            combinations: subsets.to_string(),
            max_n: BRUTE_FORCE_MAX_N,
            max_subsets: BRUTE_FORCE_MAX_SUBSETS,
        });
    }
    if k == 0 || k > n {
        return Ok(CliqueCount::ZERO);
    }

    // Dense adjacency as bit rows.
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    for (u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        adj[u * words + v / 64] |= 1 << (v % 64);
        adj[v * words + u / 64] |= 1 << (u % 64);
    }
    let linked = |a: usize, b: usize| adj[a * words + b / 64] >> (b % 64) & 1 == 1;

    let mut found = CliqueCount::ZERO;
    let mut idx: Vec<usize> = (0..k).collect();
    let mut tuple: Vec<VertexId> = vec![0; k];
    loop {
        let is_clique = (0..k).all(|i| (i + 1..k).all(|j| linked(idx[i], idx[j])));
        if is_clique {
            for (t, &i) in tuple.iter_mut().zip(&idx) {
                *t = i as VertexId;
            }
            sink.report(&tuple);
            found.add(1);
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            return Ok(found);
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
