//! Seeded random instances. All streams come from ChaCha8 seeded with
//! `seed_from_u64`, so any implementation of that generator reproduces them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub type InstanceRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const MAX_ATTEMPTS: usize = 100_000;

/// Uniform simple `degree`-regular graph from the configuration model,
/// rejecting pairings that contain a self-loop or a repeated edge.
pub fn configuration_model<R: Rng>(n: usize, degree: usize, rng: &mut R) -> Result<Graph> {
    if (n * degree) % 2 == 1 || (n > 0 && degree >= n) {
        return Err(Error::InvalidInput(format!(
            "no simple {degree}-regular graph on {n} vertices"
        )));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    'attempt: for _ in 0..MAX_ATTEMPTS {
        stubs.shuffle(rng);
        let mut edges = Vec::with_capacity(stubs.len() / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return Graph::from_edges(n, edges);
    }
    Err(Error::BudgetExceeded(format!(
        "no simple pairing after {MAX_ATTEMPTS} attempts"
    )))
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid random graph")
}

/// Two disjoint random terminal sets of the given sizes.
pub fn random_terminals<R: Rng>(n: usize, size_a: usize, size_b: usize, rng: &mut R) -> (VertexSet, VertexSet) {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let size_a = size_a.min(n);
    let size_b = size_b.min(n - size_a);
    let a = order[..size_a].iter().copied().collect();
    let b = order[size_a..size_a + size_b].iter().copied().collect();
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn configuration_model_is_regular_and_simple() {
        let mut rng = rng_from_seed(7);
        for (n, d) in [(10, 3), (20, 4), (7, 2), (60, 4)] {
            let g = configuration_model(n, d, &mut rng).unwrap();
            assert!((0..n).all(|v| g.degree(v) == d));
            assert_eq!(g.m(), n * d / 2);
        }
        assert!(configuration_model(5, 3, &mut rng).is_err());
    }

    #[test]
    fn seeds_reproduce() {
        let g1 = configuration_model(30, 3, &mut rng_from_seed(42)).unwrap();
        let g2 = configuration_model(30, 3, &mut rng_from_seed(42)).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(gnp(12, 0.3, &mut rng_from_seed(1)), gnp(12, 0.3, &mut rng_from_seed(1)));
    }

    #[test]
    fn terminals_are_disjoint() {
        let (a, b) = random_terminals(10, 3, 4, &mut rng_from_seed(3));
        assert_eq!((a.len(), b.len()), (3, 4));
        assert!(a.is_disjoint(&b));
    }
}
