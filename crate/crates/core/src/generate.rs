//! Seeded random graph models.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)`, so a seed
//! fixes the output on every platform.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Contract(format!(
            "edge probability must be in [0, 1], got {p}"
        )))
    }
}

/// Erdős–Rényi G(n, p): each of the `C(n, 2)` pairs independently.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_p(p)?;
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}

pub fn complete(n: usize) -> Graph {
    let n32 = n as VertexId;
    Graph::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))))
}

/// G(n, p) plus a clique on `clique` vertices chosen uniformly at random.
/// Returns the graph and the planted vertices, ascending.
pub fn planted_clique(
    n: usize,
    p: f64,
    clique: usize,
    seed: u64,
) -> Result<(Graph, Vec<VertexId>)> {
    check_p(p)?;
    if clique > n {
        return Err(Error::Contract(format!(
            "planted clique of {clique} vertices does not fit in {n}"
        )));
    }
    let mut r = rng(seed);
    let mut planted: Vec<VertexId> = sample(&mut r, n, clique)
        .into_iter()
        .map(|v| v as VertexId)
        .collect();
    planted.sort_unstable();
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    for (i, &u) in planted.iter().enumerate() {
        for &v in &planted[i + 1..] {
            edges.push((u, v));
        }
    }
    Ok((Graph::from_edges(n, edges), planted))
}

/// Barabási–Albert preferential attachment: start from a clique on
/// `attach + 1` vertices, then each new vertex links to `attach` distinct
/// existing vertices picked proportionally to degree.
pub fn barabasi_albert(n: usize, attach: usize, seed: u64) -> Result<Graph> {
    if attach == 0 {
        return Err(Error::Contract("attach must be at least 1".into()));
    }
    let start = (attach + 1).min(n);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    // Every edge endpoint once; a uniform pick from it is degree-proportional.
    let mut ends: Vec<VertexId> = Vec::new();
    for u in 0..start as VertexId {
        for v in u + 1..start as VertexId {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    let mut r = rng(seed);
    let mut chosen = Vec::with_capacity(attach);
    for v in start as VertexId..n as VertexId {
        chosen.clear();
        while chosen.len() < attach {
            let t = ends[r.gen_range(0..ends.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            ends.extend([t, v]);
        }
    }
    Ok(Graph::from_edges(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_six() {
        assert_eq!(complete(6).m(), 15);
    }

    #[test]
    fn seeds_are_deterministic() {
        assert_eq!(gnp(100, 0.1, 7).unwrap(), gnp(100, 0.1, 7).unwrap());
        assert_ne!(gnp(100, 0.1, 7).unwrap(), gnp(100, 0.1, 8).unwrap());
        assert_eq!(
            barabasi_albert(200, 3, 1).unwrap(),
            barabasi_albert(200, 3, 1).unwrap()
        );
    }

    #[test]
    fn planted_vertices_form_a_clique() {
        let (g, s) = planted_clique(60, 0.05, 9, 1).unwrap();
        assert_eq!(s.len(), 9);
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                assert!(g.has_edge(u, v));
            }
        }
        assert!(planted_clique(5, 0.5, 6, 1).is_err());
    }

    #[test]
    fn barabasi_degrees() {
        let g = barabasi_albert(300, 2, 3).unwrap();
        assert_eq!(g.m(), 3 + 2 * 297);
        assert!((3..300).all(|v| g.degree(v) >= 2));
    }

    #[test]
    fn bad_probability() {
        assert!(gnp(3, 1.5, 0).is_err());
    }
}
