//! Exact maximum anticomplete `(A, B)`-path packing for small graphs.
//!
//! Two paths are vertex-disjoint and anticomplete exactly when the second
//! avoids the closed neighborhood of the first, so the search picks a path `P`,
//! deletes `N[P]` and recurses, memoized on the set of surviving vertices.
//! Only paths that start at their single `A` vertex, end at their single `B`
//! vertex and are induced are tried: any other path contains one of those as
//! a subpath with a smaller closed neighborhood.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow;
use crate::graph::{Graph, VertexSet};

/// Limits for the exponential search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Largest vertex count accepted (at most 128).
    pub max_vertices: usize,
    /// Abort once this many candidate paths have been enumerated.
    pub max_paths_enumerated: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_vertices: 16,
            max_paths_enumerated: 20_000_000,
        }
    }
}

const MAX_SUPPORTED: usize = 128;

fn check_budget(graph: &Graph, a: &VertexSet, b: &VertexSet, budget: &OracleBudget) -> Result<()> {
    a.check_range(graph.n())?;
    b.check_range(graph.n())?;
    if budget.max_vertices == 0 || budget.max_paths_enumerated == 0 {
        return Err(Error::InvalidInput("oracle budget must be positive".into()));
    }
    let cap = budget.max_vertices.min(MAX_SUPPORTED);
    if graph.n() > cap {
        return Err(Error::BudgetExceeded(format!(
            "{} vertices exceed the oracle cap of {cap}",
            graph.n()
        )));
    }
    Ok(())
}

fn mask_of(set: &VertexSet) -> u128 {
    set.iter().fold(0, |m, v| m | 1 << v)
}

fn set_of(mask: u128) -> VertexSet {
    (0..MAX_SUPPORTED).filter(|&v| mask >> v & 1 == 1).collect()
}

struct Search<'a> {
    graph: &'a Graph,
    neighbors: Vec<u128>,
    closed: Vec<u128>,
    a: u128,
    b: u128,
    budget: &'a OracleBudget,
    enumerated: u64,
    /// Surviving vertices -> (value, exact). Inexact entries are lower bounds.
    memo: HashMap<u128, (usize, bool)>,
}

impl<'a> Search<'a> {
    fn new(graph: &'a Graph, a: &VertexSet, b: &VertexSet, budget: &'a OracleBudget) -> Self {
        let neighbors: Vec<u128> = (0..graph.n())
            .map(|v| graph.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
            .collect();
        let closed = neighbors.iter().enumerate().map(|(v, m)| m | 1 << v).collect();
        Self {
            graph,
            neighbors,
            closed,
            a: mask_of(a),
            b: mask_of(b),
            budget,
            enumerated: 0,
            memo: HashMap::new(),
        }
    }

    fn flow_bound(&self, alive: u128) -> Result<usize> {
        let (sub, ids) = self.graph.induced_subgraph(&set_of(alive))?;
        flow::flow_value(&sub, &ids.forward(&set_of(self.a & alive)), &ids.forward(&set_of(self.b & alive)))
    }

    /// Closed neighborhoods of all candidate paths in `G[alive]`, deduplicated.
    fn candidates(&mut self, alive: u128) -> Result<Vec<u128>> {
        let mut found = Vec::new();
        let starts = self.a & alive;
        for start in (0..self.graph.n()).filter(|&v| starts >> v & 1 == 1) {
            if self.b >> start & 1 == 1 {
                found.push(self.closed[start]);
                self.count()?;
                continue;
            }
            self.extend(alive, start, 1 << start, 0, &mut found)?;
        }
        found.sort_unstable();
        found.dedup();
        Ok(found)
    }

    fn count(&mut self) -> Result<()> {
        self.enumerated += 1;
        if self.enumerated > self.budget.max_paths_enumerated {
            return Err(Error::BudgetExceeded(format!(
                "more than {} candidate paths",
                self.budget.max_paths_enumerated
            )));
        }
        Ok(())
    }

    /// `blocked` holds the closed neighborhood of the path minus its last vertex.
    fn extend(
        &mut self,
        alive: u128,
        last: usize,
        on_path: u128,
        blocked: u128,
        found: &mut Vec<u128>,
    ) -> Result<()> {
        let blocked_next = blocked | self.closed[last];
        let options = self.neighbors[last] & alive & !blocked & !on_path & !self.a;
        for w in (0..self.graph.n()).filter(|&w| options >> w & 1 == 1) {
            if self.b >> w & 1 == 1 {
                found.push(blocked_next | self.closed[w]);
                self.count()?;
            } else {
                self.extend(alive, w, on_path | 1 << w, blocked_next, found)?;
            }
        }
        Ok(())
    }

    /// `min(cap, best packing in G[alive])`.
    fn value(&mut self, alive: u128, cap: usize) -> Result<usize> {
        if cap == 0 {
            return Ok(0);
        }
        if let Some(&(value, exact)) = self.memo.get(&alive) {
            if exact || value >= cap {
                return Ok(value.min(cap));
            }
        }
        let upper = self.flow_bound(alive)?;
        let limit = upper.min(cap);
        let mut best = 0;
        if limit == 1 {
            best = 1;
        } else if limit > 1 {
            for closed in self.candidates(alive)? {
                let rest = self.value(alive & !closed, limit - 1)?;
                best = best.max(1 + rest);
                if best == limit {
                    break;
                }
            }
        }
        let exact = best < cap || best == upper;
        self.memo.insert(alive, (best, exact));
        Ok(best)
    }
}

fn full_mask(n: usize) -> u128 {
    if n == MAX_SUPPORTED {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Maximum number of vertex-disjoint, pairwise anticomplete `(A, B)`-paths.
pub fn max_anticomplete_packing(
    graph: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    budget: &OracleBudget,
) -> Result<usize> {
    check_budget(graph, a, b, budget)?;
    Search::new(graph, a, b, budget).value(full_mask(graph.n()), usize::MAX)
}

/// Whether at least `k` vertex-disjoint, pairwise anticomplete `(A, B)`-paths exist.
pub fn exists_k_packing(
    graph: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
    budget: &OracleBudget,
) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    check_budget(graph, a, b, budget)?;
    Ok(Search::new(graph, a, b, budget).value(full_mask(graph.n()), k)? >= k)
}

/// Independent cross-check: lists every simple `(A, B)`-path and searches
/// for the largest set of pairwise disjoint paths with no edge between any two,
/// testing each pair edge by edge. Only practical on about ten vertices.
pub fn max_anticomplete_packing_by_tuples(
    graph: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    budget: &OracleBudget,
) -> Result<usize> {
    check_budget(graph, a, b, budget)?;
    let mut paths = Vec::new();
    for start in a {
        let mut stack = vec![start];
        collect_simple_paths(graph, b, &mut stack, &mut paths, budget.max_paths_enumerated)?;
    }
    let compatible = |p: &[usize], q: &[usize]| {
        p.iter()
            .all(|&u| q.iter().all(|&v| u != v && !graph.has_edge(u, v)))
    };
    fn grow(
        paths: &[Vec<usize>],
        candidates: &[usize],
        size: usize,
        best: &mut usize,
        compatible: &dyn Fn(&[usize], &[usize]) -> bool,
    ) {
        *best = (*best).max(size);
        for (pos, &i) in candidates.iter().enumerate() {
            if size + candidates.len() - pos <= *best {
                return;
            }
            let rest: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&j| compatible(&paths[i], &paths[j]))
                .collect();
            grow(paths, &rest, size + 1, best, compatible);
        }
    }
    let all: Vec<usize> = (0..paths.len()).collect();
    let mut best = 0;
    grow(&paths, &all, 0, &mut best, &compatible);
    Ok(best)
}

fn collect_simple_paths(
    graph: &Graph,
    b: &VertexSet,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: u64,
) -> Result<()> {
    let last = *stack.last().expect("non-empty path");
    if b.contains(last) {
        out.push(stack.clone());
        if out.len() as u64 > limit {
            return Err(Error::BudgetExceeded(format!("more than {limit} simple paths")));
        }
    }
    for &w in graph.neighbors(last) {
        if !stack.contains(&w) {
            stack.push(w);
            collect_simple_paths(graph, b, stack, out, limit)?;
            stack.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn two_disjoint_edges() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let (a, b) = (VertexSet::from([0, 2]), VertexSet::from([1, 3]));
        assert_eq!(max_anticomplete_packing(&g, &a, &b, &budget()).unwrap(), 2);
        assert_eq!(max_anticomplete_packing_by_tuples(&g, &a, &b, &budget()).unwrap(), 2);
        assert!(exists_k_packing(&g, &a, &b, 2, &budget()).unwrap());
        assert!(!exists_k_packing(&g, &a, &b, 3, &budget()).unwrap());
    }

    #[test]
    fn three_path() {
        let g = Graph::path(3);
        let (a, b) = (VertexSet::from([0]), VertexSet::from([2]));
        assert_eq!(max_anticomplete_packing(&g, &a, &b, &budget()).unwrap(), 1);
    }

    #[test]
    fn zero_is_always_reachable() {
        let g = Graph::path(3);
        assert!(exists_k_packing(&g, &VertexSet::new(), &[2].into(), 0, &budget()).unwrap());
        assert_eq!(
            max_anticomplete_packing(&g, &VertexSet::new(), &[2].into(), &budget()).unwrap(),
            0
        );
    }

    #[test]
    fn grid_rows_alternate() {
        let g = Graph::grid(5, 3);
        let a: VertexSet = (0..5).map(|r| 3 * r).collect();
        let b: VertexSet = (0..5).map(|r| 3 * r + 2).collect();
        assert_eq!(max_anticomplete_packing(&g, &a, &b, &budget()).unwrap(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::path(20);
        let err = max_anticomplete_packing(&g, &[0].into(), &[19].into(), &budget());
        assert!(matches!(err, Err(Error::BudgetExceeded(_))));
        let tight = OracleBudget {
            max_vertices: 16,
            max_paths_enumerated: 1,
        };
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let err = max_anticomplete_packing(&g, &[0, 2, 4].into(), &[1, 3, 5].into(), &tight);
        assert!(matches!(err, Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn shared_terminals_count_as_single_vertex_paths() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let both = VertexSet::from([0, 1, 2]);
        // {0,1} adjacent, so at most one of them plus the isolated 2.
        assert_eq!(max_anticomplete_packing(&g, &both, &both, &budget()).unwrap(), 2);
        assert_eq!(max_anticomplete_packing_by_tuples(&g, &both, &both, &budget()).unwrap(), 2);
    }
}
