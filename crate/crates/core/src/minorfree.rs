//! Solver for sparse (minor-closed) graph classes.
//!
//! Take a maximum packing of `t` vertex-disjoint paths, build the conflict
//! graph with one vertex per path and an edge whenever some graph edge joins
//! two paths, and keep the paths of an independent set of it. The conflict
//! graph is a minor of the input, so on `H`-minor-free inputs its average
//! degree is bounded; the min-degree greedy independent set has at least
//! `⌈t / (d̄ + 1)⌉` members for average degree `d̄`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{self, owners, PathSystem};
use crate::graph::{Graph, VertexSet};

/// One vertex per path; paths adjacent iff a graph edge joins them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    pub graph: Graph,
    pub paths: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn average_degree(&self) -> f64 {
        if self.graph.n() == 0 {
            0.0
        } else {
            2.0 * self.graph.m() as f64 / self.graph.n() as f64
        }
    }

    /// `⌈t / (d̄ + 1)⌉ = ⌈t² / (2m + t)⌉`, computed exactly.
    pub fn independence_bound(&self) -> usize {
        let t = self.graph.n();
        if t == 0 {
            0
        } else {
            (t * t).div_ceil(2 * self.graph.m() + t)
        }
    }
}

pub fn build_conflict_graph(graph: &Graph, paths: &PathSystem) -> Result<ConflictGraph> {
    let owner = owners(graph.n(), &paths.paths)?;
    let edges: BTreeSet<(usize, usize)> = graph
        .edges()
        .filter_map(|(u, v)| match (owner[u], owner[v]) {
            (Some(i), Some(j)) if i != j => Some((i.min(j), i.max(j))),
            _ => None,
        })
        .collect();
    Ok(ConflictGraph {
        graph: Graph::from_edges(paths.len(), edges)?,
        paths: paths.paths.clone(),
    })
}

/// Min-degree greedy independent set: repeatedly take a vertex of minimum
/// remaining degree (lowest id on ties) and delete its closed neighborhood.
pub fn greedy_independent_set(graph: &Graph) -> VertexSet {
    let n = graph.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut chosen = Vec::new();
    while let Some((_, v)) = queue.pop_first() {
        chosen.push(v);
        alive[v] = false;
        let removed: Vec<usize> = graph.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
        for &w in &removed {
            alive[w] = false;
            queue.remove(&(degree[w], w));
        }
        for &w in &removed {
            for &x in graph.neighbors(w) {
                if alive[x] {
                    queue.remove(&(degree[x], x));
                    degree[x] -= 1;
                    queue.insert((degree[x], x));
                }
            }
        }
    }
    VertexSet::from(chosen)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorFreeReport {
    /// Size of the maximum flow packing.
    pub t: usize,
    pub conflict_edges: usize,
    /// Average degree of the conflict graph.
    pub avg_degree: f64,
    pub is_size: usize,
    /// `⌈t / (avg_degree + 1)⌉`.
    pub certified_bound: usize,
}

/// Vertex-disjoint, pairwise anticomplete `(A, B)`-paths selected from a
/// maximum packing through an independent set of its conflict graph.
pub fn solve_minor_free(
    graph: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<(PathSystem, MinorFreeReport)> {
    let packing = flow::max_disjoint_paths(graph, a, b)?;
    let conflicts = build_conflict_graph(graph, &packing)?;
    let chosen = greedy_independent_set(&conflicts.graph);
    let paths = PathSystem::new(
        graph,
        chosen.iter().map(|i| conflicts.paths[i].clone()).collect(),
    );
    paths.validate(graph, a, b)?;
    let report = MinorFreeReport {
        t: packing.len(),
        conflict_edges: conflicts.graph.m(),
        avg_degree: conflicts.average_degree(),
        is_size: chosen.len(),
        certified_bound: conflicts.independence_bound(),
    };
    if !paths.pairwise_anticomplete || report.is_size < report.certified_bound {
        return Err(Error::Invariant(format!(
            "independent set of size {} against bound {}",
            report.is_size, report.certified_bound
        )));
    }
    Ok((paths, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_independent(g: &Graph, set: &VertexSet) -> bool {
        g.edges().all(|(u, v)| !(set.contains(u) && set.contains(v)))
    }

    #[test]
    fn conflict_graph_examples() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let apart = PathSystem::new(&g, vec![vec![0, 1], vec![2, 3]]);
        let cg = build_conflict_graph(&g, &apart).unwrap();
        assert_eq!((cg.graph.n(), cg.graph.m()), (2, 0));

        let joined = Graph::from_edges(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        let cg = build_conflict_graph(&joined, &PathSystem::new(&joined, vec![vec![0, 1], vec![2, 3]])).unwrap();
        assert_eq!(cg.graph.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn conflict_graph_of_grid_rows_is_a_path() {
        let (k, m) = (6, 4);
        let g = Graph::grid(k, m);
        let rows = (0..k).map(|r| (r * m..(r + 1) * m).collect()).collect();
        let cg = build_conflict_graph(&g, &PathSystem::new(&g, rows)).unwrap();
        assert_eq!(cg.graph, Graph::path(k));
    }

    #[test]
    fn conflict_graph_rejects_overlap() {
        let g = Graph::path(3);
        let bad = PathSystem::new(&g, vec![vec![0, 1], vec![1, 2]]);
        assert!(matches!(
            build_conflict_graph(&g, &bad),
            Err(Error::PathsNotDisjoint { vertex: 1, .. })
        ));
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_independent_set(&Graph::empty(4)), VertexSet::from([0, 1, 2, 3]));
        assert_eq!(greedy_independent_set(&Graph::complete(5)).len(), 1);
        assert_eq!(greedy_independent_set(&Graph::path(5)), VertexSet::from([0, 2, 4]));
        let grid = Graph::grid(4, 5);
        let set = greedy_independent_set(&grid);
        assert!(is_independent(&grid, &set));
    }

    #[test]
    fn bound_is_exact_ceiling() {
        // t = 5, m = 4: 25 / 13 -> 2
        let cg = ConflictGraph {
            graph: Graph::path(5),
            paths: vec![vec![]; 5],
        };
        assert_eq!(cg.independence_bound(), 2);
        assert!((cg.average_degree() - 1.6).abs() < 1e-12);
    }

    #[test]
    fn grid_left_to_right() {
        let g = Graph::grid(5, 9);
        let a: VertexSet = (0..5).map(|r| r * 9).collect();
        let b: VertexSet = (0..5).map(|r| r * 9 + 8).collect();
        let (paths, report) = solve_minor_free(&g, &a, &b).unwrap();
        assert_eq!(report.t, 5);
        assert_eq!(report.conflict_edges, 4);
        assert_eq!(report.is_size, 3);
        assert_eq!(
            paths.paths,
            vec![(0..9).collect::<Vec<_>>(), (18..27).collect(), (36..45).collect()]
        );
        assert!(paths.pairwise_anticomplete);
    }

    #[test]
    fn anticomplete_packing_is_returned_whole() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let (paths, report) = solve_minor_free(&g, &[0, 3].into(), &[2, 5].into()).unwrap();
        assert_eq!(paths.len(), 2);
        assert_eq!(report.conflict_edges, 0);
    }
}
