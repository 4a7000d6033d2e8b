//! Seeded random graphs for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Erdős–Rényi graph `G(n, p)`, deterministic in `seed`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v).expect("each pair visited once");
            }
        }
    }
    g
}

/// `count` graphs with `n` drawn from `sizes` and edge probability from
/// `probs`, cycling through the probabilities.
pub fn mixed(
    count: usize,
    sizes: std::ops::RangeInclusive<usize>,
    probs: &[f64],
    seed: u64,
) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(sizes.clone());
            gnp(n, probs[i % probs.len()], rng.gen())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(gnp(20, 0.3, 9), gnp(20, 0.3, 9));
        assert_eq!(gnp(10, 1.0, 0).num_edges(), 45);
        assert_eq!(gnp(10, 0.0, 0).num_edges(), 0);
        let c = mixed(12, 3..=8, &[0.2, 0.5], 1);
        assert_eq!(c.len(), 12);
        assert!(c.iter().all(|g| (3..=8).contains(&g.num_vertices())));
    }
}
