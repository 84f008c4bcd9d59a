use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generate::gnp;
use crate::graph::Graph;

/// Edge probabilities cycled through by [`random_suite`].
pub const SUITE_PROBABILITIES: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub graph: Graph,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

/// `count` G(n, p) graphs with `n` drawn from `min_n..=max_n` and `p`
/// cycling through [`SUITE_PROBABILITIES`]. Same `seed`, same suite.
pub fn random_suite(count: usize, min_n: usize, max_n: usize, seed: u64) -> Vec<SuiteCase> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = r.gen_range(min_n..=max_n);
            let p = SUITE_PROBABILITIES[i % SUITE_PROBABILITIES.len()];
            let seed = r.gen::<u64>();
            SuiteCase {
                graph: gnp(n, p, seed).expect("suite probabilities are valid"),
                n,
                p,
                seed,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_reproducible() {
        let a = random_suite(12, 5, 25, 3);
        let b = random_suite(12, 5, 25, 3);
        assert!(a.iter().zip(&b).all(|(x, y)| x.graph == y.graph));
        assert!(a.iter().all(|c| (5..=25).contains(&c.n)));
        assert_eq!(a[4].p, 0.5);
    }
}
