//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Neighbor lists are kept sorted ascending and every set-valued result is
//! returned sorted, so all operations here are deterministic.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Checks that every member is a vertex of a graph on `n` vertices.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&vertex) if vertex >= n => Err(Error::VertexOutOfRange { vertex, n }),
            _ => Ok(()),
        }
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self(members)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(members: Vec<usize>) -> Self {
        members.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(members: [usize; N]) -> Self {
        members.into_iter().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = std::vec::IntoIter<usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Old/new id bookkeeping for an induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        Self {
            old_to_new: (0..n).map(Some).collect(),
            new_to_old: (0..n).collect(),
        }
    }

    /// Maps a set of old ids, dropping ids outside the subgraph.
    pub fn forward(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .filter_map(|v| self.old_to_new.get(v).copied().flatten())
            .collect()
    }

    pub fn backward(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.new_to_old[v]).collect()
    }

    pub fn backward_path(&self, path: &[usize]) -> Vec<usize> {
        path.iter().map(|&v| self.new_to_old[v]).collect()
    }
}

/// Bookkeeping for a graph obtained by contracting disjoint vertex sets.
///
/// Every original vertex belongs to exactly one blob; vertices outside the
/// contracted sets become singleton blobs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    pub blob_of: Vec<VertexSet>,
    pub origin_of: Vec<usize>,
}

impl ContractionMap {
    pub fn is_singleton(&self, contracted: usize) -> bool {
        self.blob_of[contracted].len() == 1
    }
}

/// Result of [`Graph::anticomplete`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anticompleteness {
    Anticomplete,
    /// An edge joins the two sets.
    Joined { u: usize, v: usize },
    /// The sets share a vertex.
    Overlapping { vertex: usize },
}

impl Anticompleteness {
    pub fn holds(self) -> bool {
        matches!(self, Anticompleteness::Anticomplete)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adjacency))
    }

    fn from_raw_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
        }
        Self {
            adjacency,
            edge_count: degree_sum / 2,
        }
    }

    /// Path on `n` vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("valid complete graph")
    }

    /// `rows x cols` grid; vertex `(r, c)` has id `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Self::from_edges(rows * cols, edges).expect("valid grid")
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet((0..self.n()).collect())
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Open neighborhood `N(X)`: neighbors of `X` outside `X`.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .flat_map(|v| self.adjacency[v].iter().copied())
            .filter(|&w| !set.contains(w))
            .collect()
    }

    /// Closed neighborhood `N[X] = N(X) ∪ X`.
    pub fn closed_neighborhood(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .flat_map(|v| std::iter::once(v).chain(self.adjacency[v].iter().copied()))
            .collect()
    }

    pub fn closed_neighborhood_of(&self, v: usize) -> VertexSet {
        std::iter::once(v)
            .chain(self.adjacency[v].iter().copied())
            .collect()
    }

    /// The subgraph induced by `set`. New ids follow the ascending order of `set`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, IdMap)> {
        set.check_range(self.n())?;
        let mut old_to_new = vec![None; self.n()];
        for (new, old) in set.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let adjacency = set
            .iter()
            .map(|old| {
                self.adjacency[old]
                    .iter()
                    .filter_map(|&w| old_to_new[w])
                    .collect::<Vec<_>>()
            })
            .collect();
        let graph = Self::from_raw_adjacency(adjacency);
        Ok((
            graph,
            IdMap {
                old_to_new,
                new_to_old: set.as_slice().to_vec(),
            },
        ))
    }

    /// `G \ X`.
    pub fn without(&self, removed: &VertexSet) -> Result<(Graph, IdMap)> {
        removed.check_range(self.n())?;
        self.induced_subgraph(&self.vertices().difference(removed))
    }

    /// Contracts each of the given disjoint connected sets into one vertex.
    ///
    /// Parallel edges are merged and self-loops dropped. Contracted vertices are
    /// numbered by the smallest original id they contain, so vertices outside all
    /// blobs keep their relative order.
    pub fn contract_sets(&self, blobs: &[VertexSet]) -> Result<(Graph, ContractionMap)> {
        let n = self.n();
        let mut blob_index = vec![None; n];
        for (i, blob) in blobs.iter().enumerate() {
            blob.check_range(n)?;
            if blob.is_empty() || !self.is_connected_set(blob) {
                return Err(Error::DisconnectedBlob(i));
            }
            for v in blob {
                if blob_index[v].is_some() {
                    return Err(Error::OverlappingBlobs(v));
                }
                blob_index[v] = Some(i);
            }
        }

        let mut origin_of = vec![usize::MAX; n];
        let mut blob_of = Vec::new();
        for v in 0..n {
            match blob_index[v] {
                None => {
                    origin_of[v] = blob_of.len();
                    blob_of.push(VertexSet(vec![v]));
                }
                Some(i) if blobs[i].first() == Some(v) => {
                    let id = blob_of.len();
                    for w in &blobs[i] {
                        origin_of[w] = id;
                    }
                    blob_of.push(blobs[i].clone());
                }
                Some(_) => {}
            }
        }

        let mut adjacency = vec![Vec::new(); blob_of.len()];
        for (u, v) in self.edges() {
            let (cu, cv) = (origin_of[u], origin_of[v]);
            if cu != cv {
                adjacency[cu].push(cv);
                adjacency[cv].push(cu);
            }
        }
        Ok((
            Self::from_raw_adjacency(adjacency),
            ContractionMap { blob_of, origin_of },
        ))
    }

    fn is_connected_set(&self, set: &VertexSet) -> bool {
        let Some(start) = set.first() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if set.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Breadth-first distances from `source`, `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices at distance one or two from `v`, ascending.
    pub fn ball2(&self, v: usize) -> VertexSet {
        self.adjacency[v]
            .iter()
            .flat_map(|&w| std::iter::once(w).chain(self.adjacency[w].iter().copied()))
            .filter(|&w| w != v)
            .collect()
    }

    /// `G²`: vertices adjacent iff their distance in `G` is one or two.
    pub fn square(&self) -> Graph {
        let adjacency = (0..self.n()).map(|v| self.ball2(v).into_vec()).collect();
        Self::from_raw_adjacency(adjacency)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut components = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            components.push(VertexSet::from(members));
        }
        components
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            dist.fill(usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[v] >= b) {
                    break;
                }
                for &w in &self.adjacency[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let length = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(length, |b| b.min(length)));
                    }
                }
            }
        }
        best
    }

    /// Degeneracy and a witnessing elimination order.
    ///
    /// Repeatedly removes a vertex of minimum remaining degree (lowest id on
    /// ties); the degeneracy is the largest degree seen at removal time.
    pub fn degeneracy(&self) -> (usize, Vec<usize>) {
        let n = self.n();
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut degeneracy = 0;
        while let Some((d, v)) = queue.pop_first() {
            degeneracy = degeneracy.max(d);
            removed[v] = true;
            order.push(v);
            for &w in &self.adjacency[v] {
                if !removed[w] {
                    queue.remove(&(degree[w], w));
                    degree[w] -= 1;
                    queue.insert((degree[w], w));
                }
            }
        }
        (degeneracy, order)
    }

    /// Whether no edge joins `x` and `y` and the two sets are disjoint.
    pub fn anticomplete(&self, x: &VertexSet, y: &VertexSet) -> Anticompleteness {
        if let Some(vertex) = x.iter().find(|&v| y.contains(v)) {
            return Anticompleteness::Overlapping { vertex };
        }
        for u in x {
            if let Some(&v) = self.adjacency[u].iter().find(|&&v| y.contains(v)) {
                return Anticompleteness::Joined { u, v };
            }
        }
        Anticompleteness::Anticomplete
    }

    /// Whether `path` is a sequence of distinct vertices with consecutive ones adjacent.
    pub fn is_path(&self, path: &[usize]) -> bool {
        if path.is_empty() || path.iter().any(|&v| v >= self.n()) {
            return false;
        }
        let distinct: BTreeSet<_> = path.iter().collect();
        distinct.len() == path.len() && path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}
