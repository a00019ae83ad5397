//! Maximum vertex-disjoint `(A, B)`-path packings and minimum separators.
//!
//! Every vertex `v` is split into `in(v) -> out(v)` with unit capacity; graph
//! edges become infinite-capacity arcs `out(u) -> in(w)`. A super-source feeds
//! `in(a)` for `a ∈ A` and `out(b)` drains into a super-sink for `b ∈ B`, so a
//! vertex in `A ∩ B` carries a single-vertex path. Max flow is computed with
//! blocking-flow phases over BFS levels (Dinic). Arc lists are built in
//! ascending vertex order, which makes the result deterministic.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// An ordered collection of `(A, B)`-paths with disjointness flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub paths: Vec<Vec<usize>>,
    pub vertex_disjoint: bool,
    pub pairwise_anticomplete: bool,
}

impl PathSystem {
    /// Wraps `paths`, computing both flags against `graph`.
    pub fn new(graph: &Graph, paths: Vec<Vec<usize>>) -> Self {
        let owner = owners(graph.n(), &paths);
        let vertex_disjoint = owner.is_ok();
        let pairwise_anticomplete = match owner {
            Ok(owner) => graph.edges().all(|(u, v)| match (owner[u], owner[v]) {
                (Some(i), Some(j)) => i == j,
                _ => true,
            }),
            Err(_) => false,
        };
        Self {
            paths,
            vertex_disjoint,
            pairwise_anticomplete,
        }
    }

    pub fn empty() -> Self {
        Self {
            paths: Vec::new(),
            vertex_disjoint: true,
            pairwise_anticomplete: true,
        }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Checks every path is an `(A, B)`-path of `graph` and that the flags
    /// agree with a fresh computation.
    pub fn validate(&self, graph: &Graph, a: &VertexSet, b: &VertexSet) -> Result<()> {
        for (i, path) in self.paths.iter().enumerate() {
            if !graph.is_path(path) {
                return Err(Error::Invariant(format!("path {i} is not a path: {path:?}")));
            }
            let (first, last) = (path[0], path[path.len() - 1]);
            if !a.contains(first) || !b.contains(last) {
                return Err(Error::Invariant(format!(
                    "path {i} runs from {first} to {last}, not from A to B"
                )));
            }
        }
        let fresh = PathSystem::new(graph, self.paths.clone());
        if fresh.vertex_disjoint != self.vertex_disjoint
            || fresh.pairwise_anticomplete != self.pairwise_anticomplete
        {
            return Err(Error::Invariant("path system flags are stale".into()));
        }
        Ok(())
    }

    /// Union of the vertices on all paths.
    pub fn vertices(&self) -> VertexSet {
        self.paths.iter().flatten().copied().collect()
    }
}

/// Maps each vertex to the index of the path using it, or reports the first
/// shared vertex.
pub(crate) fn owners(n: usize, paths: &[Vec<usize>]) -> Result<Vec<Option<usize>>> {
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, path) in paths.iter().enumerate() {
        for &v in path {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if let Some(first) = owner[v] {
                return Err(Error::PathsNotDisjoint {
                    first,
                    second: i,
                    vertex: v,
                });
            }
            owner[v] = Some(i);
        }
    }
    Ok(owner)
}

/// A vertex set claimed to meet every `(A, B)`-path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorCertificate {
    pub vertices: VertexSet,
}

impl SeparatorCertificate {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn check(&self, graph: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
        is_separator(graph, a, b, &self.vertices)
    }
}

/// A maximum packing together with a minimum separator of equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MengerCertificate {
    pub paths: PathSystem,
    pub separator: SeparatorCertificate,
}

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: i64,
}

struct Network {
    arcs: Vec<Vec<Arc>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: vec![Vec::new(); nodes],
            level: vec![-1; nodes],
            cursor: vec![0; nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        let rev_from = self.arcs[to].len();
        let rev_to = self.arcs[from].len();
        self.arcs[from].push(Arc {
            to,
            rev: rev_from,
            cap,
        });
        self.arcs[to].push(Arc {
            to: from,
            rev: rev_to,
            cap: 0,
        });
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.fill(-1);
        self.level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for arc in &self.arcs[u] {
                if arc.cap > 0 && self.level[arc.to] < 0 {
                    self.level[arc.to] = self.level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[sink] >= 0
    }

    fn dfs(&mut self, u: usize, sink: usize, pushed: i64) -> i64 {
        if u == sink {
            return pushed;
        }
        while self.cursor[u] < self.arcs[u].len() {
            let i = self.cursor[u];
            let Arc { to, cap, .. } = self.arcs[u][i];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, sink, pushed.min(cap));
                if got > 0 {
                    self.arcs[u][i].cap -= got;
                    let rev = self.arcs[u][i].rev;
                    self.arcs[to][rev].cap += got;
                    return got;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let mut total = 0;
        while self.bfs(source, sink) {
            self.cursor.fill(0);
            loop {
                let got = self.dfs(source, sink, i64::MAX);
                if got == 0 {
                    break;
                }
                total += got;
            }
        }
        total
    }

    fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for arc in &self.arcs[u] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}

struct SplitFlow {
    network: Network,
    n: usize,
    value: usize,
    capacities: Vec<Vec<i64>>,
}

const fn node_in(v: usize) -> usize {
    2 * v
}

const fn node_out(v: usize) -> usize {
    2 * v + 1
}

fn run_split_flow(graph: &Graph, a: &VertexSet, b: &VertexSet) -> Result<SplitFlow> {
    let n = graph.n();
    a.check_range(n)?;
    b.check_range(n)?;
    let (source, sink) = (2 * n, 2 * n + 1);
    let infinite = n as i64 + 1;
    let mut network = Network::new(2 * n + 2);
    for v in 0..n {
        network.add_arc(node_in(v), node_out(v), 1);
    }
    for v in 0..n {
        for &w in graph.neighbors(v) {
            network.add_arc(node_out(v), node_in(w), infinite);
        }
    }
    for v in a {
        network.add_arc(source, node_in(v), infinite);
    }
    for v in b {
        network.add_arc(node_out(v), sink, infinite);
    }
    let capacities = network
        .arcs
        .iter()
        .map(|list| list.iter().map(|arc| arc.cap).collect())
        .collect();
    let value = network.max_flow(source, sink) as usize;
    Ok(SplitFlow {
        network,
        n,
        value,
        capacities,
    })
}

impl SplitFlow {
    fn carried(&self, node: usize, index: usize) -> i64 {
        self.capacities[node][index] - self.network.arcs[node][index].cap
    }

    /// Follows saturated arcs from the source; each unit of flow yields one path.
    fn decompose(&self) -> Vec<Vec<usize>> {
        let (source, sink) = (2 * self.n, 2 * self.n + 1);
        let mut used: Vec<Vec<i64>> = self
            .network
            .arcs
            .iter()
            .map(|list| vec![0; list.len()])
            .collect();
        let mut paths = Vec::with_capacity(self.value);
        for _ in 0..self.value {
            let mut path = Vec::new();
            let mut node = source;
            while node != sink {
                let next = (0..self.network.arcs[node].len())
                    .filter(|&i| self.capacities[node][i] > 0)
                    .filter(|&i| self.carried(node, i) > used[node][i])
                    .min_by_key(|&i| self.network.arcs[node][i].to)
                    .expect("flow conservation");
                used[node][next] += 1;
                node = self.network.arcs[node][next].to;
                if node < 2 * self.n && node % 2 == 0 {
                    path.push(node / 2);
                }
            }
            paths.push(path);
        }
        paths
    }

    /// Vertices whose in-node is residual-reachable but whose out-node is not.
    fn min_cut(&self) -> VertexSet {
        let reach = self.network.residual_reachable(2 * self.n);
        (0..self.n)
            .filter(|&v| reach[node_in(v)] && !reach[node_out(v)])
            .collect()
    }
}

/// `flow_G(A, B)`: the maximum number of vertex-disjoint `(A, B)`-paths.
pub fn flow_value(graph: &Graph, a: &VertexSet, b: &VertexSet) -> Result<usize> {
    Ok(run_split_flow(graph, a, b)?.value)
}

/// A maximum collection of vertex-disjoint `(A, B)`-paths.
///
/// The anticompleteness flag reflects an explicit check and is not guaranteed.
pub fn max_disjoint_paths(graph: &Graph, a: &VertexSet, b: &VertexSet) -> Result<PathSystem> {
    let flow = run_split_flow(graph, a, b)?;
    Ok(PathSystem::new(graph, flow.decompose()))
}

/// A minimum `(A, B)`-separator; its size equals `flow_G(A, B)`.
pub fn min_separator(graph: &Graph, a: &VertexSet, b: &VertexSet) -> Result<SeparatorCertificate> {
    let flow = run_split_flow(graph, a, b)?;
    Ok(SeparatorCertificate {
        vertices: flow.min_cut(),
    })
}

/// Both halves of Menger's duality from a single flow computation.
pub fn menger(graph: &Graph, a: &VertexSet, b: &VertexSet) -> Result<MengerCertificate> {
    let flow = run_split_flow(graph, a, b)?;
    let separator = flow.min_cut();
    if separator.len() != flow.value {
        return Err(Error::Invariant(format!(
            "cut of size {} for flow {}",
            separator.len(),
            flow.value
        )));
    }
    Ok(MengerCertificate {
        paths: PathSystem::new(graph, flow.decompose()),
        separator: SeparatorCertificate {
            vertices: separator,
        },
    })
}

/// Whether every `(A, B)`-path meets `separator`.
pub fn is_separator(graph: &Graph, a: &VertexSet, b: &VertexSet, separator: &VertexSet) -> bool {
    let n = graph.n();
    let blocked = |v: usize| v >= n || separator.contains(v);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for v in a {
        if !blocked(v) && !seen[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        if b.contains(v) {
            return false;
        }
        for &w in graph.neighbors(v) {
            if !blocked(w) && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::path(2);
        let (a, b) = (VertexSet::from([0]), VertexSet::from([1]));
        let paths = max_disjoint_paths(&g, &a, &b).unwrap();
        assert_eq!(paths.paths, vec![vec![0, 1]]);
        assert_eq!(min_separator(&g, &a, &b).unwrap().vertices, VertexSet::from([0]));
    }

    #[test]
    fn isolated_vertex_in_both_sides() {
        let g = Graph::empty(1);
        let v = VertexSet::from([0]);
        let paths = max_disjoint_paths(&g, &v, &v).unwrap();
        assert_eq!(paths.paths, vec![vec![0]]);
        assert!(paths.vertex_disjoint && paths.pairwise_anticomplete);
        assert_eq!(min_separator(&g, &v, &v).unwrap().vertices, v);
    }

    #[test]
    fn empty_terminals_give_empty_system() {
        let g = Graph::path(3);
        let paths = max_disjoint_paths(&g, &VertexSet::new(), &[2].into()).unwrap();
        assert!(paths.is_empty());
        assert!(min_separator(&g, &VertexSet::new(), &[2].into()).unwrap().is_empty());
    }

    #[test]
    fn no_path_means_empty_separator() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let (a, b) = (VertexSet::from([0]), VertexSet::from([3]));
        assert_eq!(flow_value(&g, &a, &b).unwrap(), 0);
        assert!(min_separator(&g, &a, &b).unwrap().is_empty());
    }

    #[test]
    fn grid_rows_are_the_only_maximum_packing() {
        let g = Graph::grid(5, 9);
        let a: VertexSet = (0..5).map(|r| r * 9).collect();
        let b: VertexSet = (0..5).map(|r| r * 9 + 8).collect();
        let cert = menger(&g, &a, &b).unwrap();
        let rows: Vec<Vec<usize>> = (0..5).map(|r| (r * 9..r * 9 + 9).collect()).collect();
        assert_eq!(cert.paths.paths, rows);
        assert!(cert.paths.vertex_disjoint);
        assert!(!cert.paths.pairwise_anticomplete);
        assert_eq!(cert.separator.len(), 5);
        assert!(cert.separator.check(&g, &a, &b));
        cert.paths.validate(&g, &a, &b).unwrap();
    }

    #[test]
    fn separator_checks() {
        let g = Graph::path(4);
        let (a, b) = (VertexSet::from([0]), VertexSet::from([3]));
        assert!(is_separator(&g, &a, &b, &a));
        assert!(!is_separator(&g, &a, &b, &VertexSet::new()));
        assert!(is_separator(&g, &a, &b, &[2].into()));
    }

    #[test]
    fn flags_detect_conflicts() {
        let g = Graph::grid(2, 2);
        let system = PathSystem::new(&g, vec![vec![0, 1], vec![2, 3]]);
        assert!(system.vertex_disjoint);
        assert!(!system.pairwise_anticomplete);
        let overlapping = PathSystem::new(&g, vec![vec![0, 1], vec![1, 3]]);
        assert!(!overlapping.vertex_disjoint);
        assert!(!overlapping.pairwise_anticomplete);
    }

    #[test]
    fn validate_rejects_wrong_endpoints() {
        let g = Graph::path(3);
        let system = PathSystem::new(&g, vec![vec![2, 1, 0]]);
        assert!(system.validate(&g, &[0].into(), &[2].into()).is_err());
    }
}
