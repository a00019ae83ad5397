use std::collections::VecDeque;

use induced_menger::counterexample::generate;
use induced_menger::flow::{self, is_separator, max_disjoint_paths, menger, min_separator};
use induced_menger::random::{gnp, random_terminals, rng_from_seed};
use induced_menger::{Graph, VertexSet};
use proptest::prelude::*;

/// Whether an `(A, B)`-path avoids the vertices in `removed` (bitmask).
fn connected_avoiding(g: &Graph, a: &VertexSet, b: &VertexSet, removed: u32) -> bool {
    let mut seen = vec![false; g.n()];
    let mut queue: VecDeque<usize> = a.iter().filter(|&v| removed >> v & 1 == 0).collect();
    for &v in &queue {
        seen[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        if b.contains(v) {
            return true;
        }
        for &w in g.neighbors(v) {
            if removed >> w & 1 == 0 && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

/// Smallest separator by exhaustive subset search.
fn brute_force_min_separator(g: &Graph, a: &VertexSet, b: &VertexSet) -> usize {
    (0u32..1 << g.n())
        .filter(|&mask| !connected_avoiding(g, a, b, mask))
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

#[test]
fn counterexample_rows_form_a_maximum_packing() {
    let inst = generate(5, 4).unwrap();
    let paths = max_disjoint_paths(&inst.graph, &inst.a, &inst.b).unwrap();
    assert_eq!(paths.len(), 5);
    assert!(paths.vertex_disjoint);
    paths.validate(&inst.graph, &inst.a, &inst.b).unwrap();
}

#[test]
fn counterexample_star_centers_separate() {
    let inst = generate(4, 4).unwrap();
    let centers: VertexSet = (1..=4).map(|i| inst.star_center(i)).collect();
    assert_eq!(centers.len(), 4);
    assert!(is_separator(&inst.graph, &inst.a, &inst.b, &centers));
    assert_eq!(min_separator(&inst.graph, &inst.a, &inst.b).unwrap().len(), 4);
}

#[test]
fn closed_neighborhood_of_first_path_separates() {
    let inst = generate(3, 4).unwrap();
    let paths = max_disjoint_paths(&inst.graph, &inst.a, &inst.b).unwrap();
    let first: VertexSet = paths.paths[0].iter().copied().collect();
    let closed = inst.graph.closed_neighborhood(&first);
    assert!(is_separator(&inst.graph, &inst.a, &inst.b, &closed));
}

#[test]
fn seeded_random_graphs_match_brute_force() {
    let mut rng = rng_from_seed(11);
    for round in 0..60 {
        let n = 4 + round % 9;
        let g = gnp(n, if round % 2 == 0 { 0.2 } else { 0.4 }, &mut rng);
        let (a, b) = random_terminals(n, 1 + round % 3, 1 + round % 4, &mut rng);
        let cert = menger(&g, &a, &b).unwrap();
        assert_eq!(cert.paths.len(), brute_force_min_separator(&g, &a, &b), "round {round}");
        assert_eq!(cert.separator.len(), cert.paths.len());
        assert!(cert.separator.check(&g, &a, &b));
        cert.paths.validate(&g, &a, &b).unwrap();
    }
}

fn instance() -> impl Strategy<Value = (Graph, VertexSet, VertexSet)> {
    (2usize..12, 0.1f64..0.5, any::<u64>(), any::<u16>(), any::<u16>()).prop_map(
        |(n, p, seed, ma, mb)| {
            let g = gnp(n, p, &mut rng_from_seed(seed));
            let a = (0..n).filter(|v| ma >> v & 1 == 1).collect();
            let b = (0..n).filter(|v| mb >> v & 1 == 1).collect();
            (g, a, b)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn duality_with_overlapping_terminals((g, a, b) in instance()) {
        let paths = max_disjoint_paths(&g, &a, &b).unwrap();
        let sep = min_separator(&g, &a, &b).unwrap();
        prop_assert_eq!(paths.len(), sep.len());
        prop_assert_eq!(paths.len(), brute_force_min_separator(&g, &a, &b));
        prop_assert!(paths.vertex_disjoint);
        prop_assert!(sep.check(&g, &a, &b));
        paths.validate(&g, &a, &b).unwrap();
        for v in a.intersection(&b) {
            prop_assert!(sep.vertices.contains(v));
        }
    }

    #[test]
    fn flow_is_monotone_under_induced_subgraphs((g, a, b) in instance(), keep in any::<u16>()) {
        let x: VertexSet = a.union(&b).iter()
            .chain((0..g.n()).filter(|v| keep >> v & 1 == 1))
            .collect();
        let (sub, ids) = g.induced_subgraph(&x).unwrap();
        let inner = flow::flow_value(&sub, &ids.forward(&a), &ids.forward(&b)).unwrap();
        prop_assert!(inner <= flow::flow_value(&g, &a, &b).unwrap());
    }

    #[test]
    fn separator_check_agrees_with_search((g, a, b) in instance(), s in any::<u16>()) {
        let mask = u32::from(s) & ((1u32 << g.n()) - 1);
        let sep: VertexSet = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        prop_assert_eq!(is_separator(&g, &a, &b, &sep), !connected_avoiding(&g, &a, &b, mask));
    }
}
