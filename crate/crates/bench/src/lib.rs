//! Fixtures shared by the benchmarks.

use induced_menger::random::{configuration_model, random_terminals, rng_from_seed};
use induced_menger::{Graph, VertexSet};

/// Random `delta`-regular graph on `n` vertices with `|A| = |B| = k`.
pub fn regular_instance(n: usize, delta: usize, k: usize, seed: u64) -> (Graph, VertexSet, VertexSet) {
    let mut rng = rng_from_seed(seed);
    let graph = configuration_model(n, delta, &mut rng).expect("n * delta is even");
    let (a, b) = random_terminals(n, k, k, &mut rng);
    (graph, a, b)
}

/// `rows × cols` grid with `A` the left and `B` the right column.
pub fn grid_instance(rows: usize, cols: usize) -> (Graph, VertexSet, VertexSet) {
    let graph = Graph::grid(rows, cols);
    let a = (0..rows).map(|r| r * cols).collect();
    let b = (0..rows).map(|r| r * cols + cols - 1).collect();
    (graph, a, b)
}
