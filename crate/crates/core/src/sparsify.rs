//! Bounded-degree solver.
//!
//! Pipeline: attach pendant two-vertex paths to the terminals so that every
//! terminal has degree at most one and every neighbor of a terminal degree at
//! most two, then shrink the degree of every other vertex to at most two with
//! a sequence of contraction rounds, one per distance-3 independent class.
//! In the resulting graph of maximum degree two, vertex-disjoint `(A, B)`-paths
//! are automatically pairwise anticomplete. Each round keeps at least a
//! `1/(Δ+1)` fraction of the flow, so the final packing has at least
//! `⌈flow / (Δ+1)^(Δ²+1)⌉` paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{self, PathSystem, SeparatorCertificate};
use crate::graph::{ContractionMap, Graph, VertexSet};

/// Which terminal set a gadget serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

/// A pendant path `endpoint - mid - original_terminal`; the terminal role moves
/// from `original_terminal` to `endpoint`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetRecord {
    pub original_terminal: usize,
    pub mid: usize,
    pub endpoint: usize,
    pub side: Side,
}

/// The terminal-gadgeted instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetedInstance {
    pub graph: Graph,
    pub a: VertexSet,
    pub b: VertexSet,
    pub records: Vec<GadgetRecord>,
}

fn needs_gadget(adjacency: &[Vec<usize>], v: usize, shared: bool) -> bool {
    let degree = adjacency[v].len();
    // A non-isolated vertex of A ∩ B is gadgeted on both sides; otherwise two
    // adjacent single-vertex paths could survive the degree-two endgame.
    (shared && degree > 0) || degree > 1 || adjacency[v].iter().any(|&w| adjacency[w].len() > 2)
}

/// Attaches pendant two-vertex paths to terminals until every terminal has
/// degree at most one and every neighbor of a terminal has degree at most two.
///
/// New vertices get ids `n, n+1, ...` in creation order (mid before endpoint).
pub fn attach_terminal_gadgets(
    graph: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<GadgetedInstance> {
    let n = graph.n();
    a.check_range(n)?;
    b.check_range(n)?;
    let mut adjacency: Vec<Vec<usize>> = (0..n).map(|v| graph.neighbors(v).to_vec()).collect();
    let shared = a.intersection(b);
    let mut terminals = [a.clone(), b.clone()];
    let mut records = Vec::new();
    loop {
        let mut changed = false;
        for (side_index, side) in [Side::A, Side::B].into_iter().enumerate() {
            let pending: Vec<usize> = terminals[side_index].iter().collect();
            for v in pending {
                if !needs_gadget(&adjacency, v, shared.contains(v)) {
                    continue;
                }
                let mid = adjacency.len();
                let endpoint = mid + 1;
                adjacency.push(vec![v, endpoint]);
                adjacency.push(vec![mid]);
                adjacency[v].push(mid);
                let set = &mut terminals[side_index];
                *set = set.iter().filter(|&x| x != v).chain([endpoint]).collect();
                records.push(GadgetRecord {
                    original_terminal: v,
                    mid,
                    endpoint,
                    side,
                });
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let total = adjacency.len();
    let edges = adjacency
        .iter()
        .enumerate()
        .flat_map(|(u, list)| list.iter().map(move |&w| (u, w)))
        .filter(|(u, w)| u < w)
        .collect::<Vec<_>>();
    let graph = Graph::from_edges(total, edges)?;
    let [a, b] = terminals;
    Ok(GadgetedInstance {
        graph,
        a,
        b,
        records,
    })
}

/// Maps paths of the gadgeted graph back to `(A, B)`-paths of `original` by
/// removing the gadget vertices at both ends.
pub fn strip_gadgets(
    original: &Graph,
    paths: &PathSystem,
    records: &[GadgetRecord],
) -> Result<PathSystem> {
    let n = original.n();
    let find = |endpoint: usize, side: Side| {
        records
            .iter()
            .find(|r| r.endpoint == endpoint && r.side == side)
    };
    let gadgeted_terminal = |v: usize, side: Side| {
        records
            .iter()
            .any(|r| r.original_terminal == v && r.side == side)
    };
    let mut stripped = Vec::with_capacity(paths.len());
    for path in &paths.paths {
        let mut start = 0;
        let mut end = path.len();
        if let Some(r) = path.first().and_then(|&v| find(v, Side::A)) {
            if path.get(1) != Some(&r.mid) || path.get(2) != Some(&r.original_terminal) {
                return Err(Error::Invariant(format!(
                    "path {path:?} does not leave A-gadget {r:?} through its terminal"
                )));
            }
            start = 2;
        } else if path.first().is_some_and(|&v| gadgeted_terminal(v, Side::A)) {
            return Err(Error::Invariant(format!(
                "path {path:?} starts at a terminal that was moved to a gadget"
            )));
        }
        if let Some(r) = path.last().and_then(|&v| find(v, Side::B)) {
            if end < 3
                || path[end - 2] != r.mid
                || path[end - 3] != r.original_terminal
            {
                return Err(Error::Invariant(format!(
                    "path {path:?} does not enter B-gadget {r:?} through its terminal"
                )));
            }
            end -= 2;
        } else if path.last().is_some_and(|&v| gadgeted_terminal(v, Side::B)) {
            return Err(Error::Invariant(format!(
                "path {path:?} ends at a terminal that was moved to a gadget"
            )));
        }
        if start >= end {
            return Err(Error::Invariant(format!("path {path:?} consists of gadget vertices")));
        }
        let inner = path[start..end].to_vec();
        if let Some(&v) = inner.iter().find(|&&v| v >= n) {
            return Err(Error::Invariant(format!(
                "gadget vertex {v} inside path {path:?}"
            )));
        }
        stripped.push(inner);
    }
    Ok(PathSystem::new(original, stripped))
}

/// Partitions `y` into distance-3 independent classes by greedily coloring the
/// square of `graph` in ascending id order with the smallest free color.
///
/// At most `Δ² + 1` classes are produced.
pub fn partition_distance3(graph: &Graph, y: &VertexSet) -> Result<Vec<VertexSet>> {
    y.check_range(graph.n())?;
    let mut color: Vec<Option<usize>> = vec![None; graph.n()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in y {
        let taken: VertexSet = graph.ball2(v).iter().filter_map(|w| color[w]).collect();
        let c = (0..).find(|c| !taken.contains(*c)).expect("unbounded colors");
        color[v] = Some(c);
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(v);
    }
    Ok(classes.into_iter().map(VertexSet::from).collect())
}

/// Whether the closed neighborhoods of members of `set` are pairwise disjoint.
pub fn is_distance3_independent(graph: &Graph, set: &VertexSet) -> bool {
    set.iter()
        .all(|v| graph.ball2(v).iter().all(|w| !set.contains(w)))
}

/// Contraction of closed neighborhoods `N[v]`, remembering each blob's center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarContraction {
    pub graph: Graph,
    pub map: ContractionMap,
    /// Center of each contracted vertex's blob; `None` for singletons.
    pub hub_of: Vec<Option<usize>>,
}

impl StarContraction {
    /// Contracts each `blob` into one vertex. Every blob must contain its hub
    /// and lie inside the hub's closed neighborhood.
    pub fn new(graph: &Graph, blobs: &[(usize, VertexSet)]) -> Result<Self> {
        for (hub, blob) in blobs {
            if !blob.contains(*hub) || !blob.is_subset(&graph.closed_neighborhood_of(*hub)) {
                return Err(Error::InvalidInput(format!(
                    "blob {blob:?} is not a star around {hub}"
                )));
            }
        }
        let sets: Vec<VertexSet> = blobs.iter().map(|(_, blob)| blob.clone()).collect();
        let (contracted, map) = graph.contract_sets(&sets)?;
        let mut hub_of = vec![None; contracted.n()];
        for (hub, blob) in blobs {
            if blob.len() > 1 {
                hub_of[map.origin_of[*hub]] = Some(*hub);
            }
        }
        Ok(Self {
            graph: contracted,
            map,
            hub_of,
        })
    }

    /// Contracts `N[v]` for every `v` in `centers`.
    pub fn of_closed_neighborhoods(graph: &Graph, centers: &VertexSet) -> Result<Self> {
        let blobs: Vec<(usize, VertexSet)> = centers
            .iter()
            .map(|v| (v, graph.closed_neighborhood_of(v)))
            .collect();
        Self::new(graph, &blobs)
    }
}

/// Expands a path of the contracted graph into a path of `graph`.
///
/// Each traversed blob contributes one of `[u]`, `[v, w]`, `[u, v]`, `[u, w]`
/// or `[u, v, w]` where `v` is the hub and `u`, `w` its neighbors adjacent to
/// the previous vertex and the next blob on the path. Lowest ids win ties.
/// Blobs may not sit at either end of the path.
pub fn expand_contracted_path(
    graph: &Graph,
    contraction: &StarContraction,
    path: &[usize],
) -> Result<Vec<usize>> {
    let map = &contraction.map;
    let mut expanded = Vec::with_capacity(path.len());
    for (i, &c) in path.iter().enumerate() {
        let blob = &map.blob_of[c];
        let Some(hub) = contraction.hub_of[c] else {
            expanded.push(blob.first().expect("non-empty blob"));
            continue;
        };
        if i == 0 || i + 1 == path.len() {
            return Err(Error::Invariant(format!(
                "contracted vertex {c} is an endpoint of {path:?}"
            )));
        }
        let prev = *expanded.last().expect("previous vertex");
        let next_blob = &map.blob_of[path[i + 1]];
        let entry: Vec<usize> = blob.iter().filter(|&u| graph.has_edge(prev, u)).collect();
        let exit: Vec<usize> = blob
            .iter()
            .filter(|&w| next_blob.iter().any(|x| graph.has_edge(x, w)))
            .collect();
        let (Some(&u), Some(&w)) = (entry.first(), exit.first()) else {
            return Err(Error::Invariant(format!(
                "contracted edge around {c} has no preimage"
            )));
        };
        if let Some(&both) = entry.iter().find(|x| exit.contains(x)) {
            expanded.push(both);
        } else if entry.contains(&hub) {
            expanded.extend([hub, w]);
        } else if exit.contains(&hub) {
            expanded.extend([u, hub]);
        } else if let Some((u, w)) = entry
            .iter()
            .flat_map(|&u| exit.iter().map(move |&w| (u, w)))
            .find(|&(u, w)| graph.has_edge(u, w))
        {
            expanded.extend([u, w]);
        } else {
            expanded.extend([u, hub, w]);
        }
    }
    Ok(expanded)
}

/// Per-round flow audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundStats {
    pub round: usize,
    pub class_size: usize,
    /// Centers of degree above two, the only ones contracted.
    pub contracted: usize,
    /// Maximum degree of the graph the round ran on.
    pub delta: usize,
    pub flow_before: usize,
    pub contracted_flow: usize,
    pub flow_after: usize,
    pub deleted: usize,
}

impl RoundStats {
    /// `flow_after >= ⌈flow_before / (delta + 1)⌉`.
    pub fn bound_holds(&self) -> bool {
        self.flow_after >= self.flow_before.div_ceil(self.delta + 1)
    }
}

/// One contraction round on the distance-3 independent set `centers`.
///
/// Returns the kept vertex set `X`: `A, B ⊆ X`, `flow_{G[X]} ≥ ⌈flow_G/(Δ+1)⌉`
/// and every center left in `X` has degree at most two in `G[X]`. Centers whose
/// degree is already at most two are left alone; every other center is either
/// deleted (no flow path uses it) or keeps only the two path neighbors.
pub fn sparsify_round(
    graph: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    centers: &VertexSet,
) -> Result<(VertexSet, RoundStats)> {
    let n = graph.n();
    a.check_range(n)?;
    b.check_range(n)?;
    centers.check_range(n)?;
    if !is_distance3_independent(graph, centers) {
        return Err(Error::InvalidInput(
            "round centers are not distance-3 independent".into(),
        ));
    }
    let terminal_zone = graph.closed_neighborhood(&a.union(b));
    if !centers.is_disjoint(&terminal_zone) {
        return Err(Error::InvalidInput(
            "round centers meet the closed neighborhood of the terminals".into(),
        ));
    }

    let class_size = centers.len();
    let flow_before = flow::flow_value(graph, a, b)?;
    // Centers of degree at most two already meet the postcondition.
    let centers: VertexSet = centers.iter().filter(|&v| graph.degree(v) > 2).collect();
    let contraction = StarContraction::of_closed_neighborhoods(graph, &centers)?;
    let ca = a.iter().map(|v| contraction.map.origin_of[v]).collect();
    let cb = b.iter().map(|v| contraction.map.origin_of[v]).collect();
    let packing = flow::max_disjoint_paths(&contraction.graph, &ca, &cb)?;

    let mut used_in_blob: Vec<Option<Vec<usize>>> = vec![None; contraction.graph.n()];
    for path in &packing.paths {
        let expanded = expand_contracted_path(graph, &contraction, path)?;
        for &c in path {
            if contraction.hub_of[c].is_some() {
                let blob = &contraction.map.blob_of[c];
                used_in_blob[c] = Some(expanded.iter().copied().filter(|&x| blob.contains(x)).collect());
            }
        }
    }

    let mut deleted = VertexSet::new();
    for hub in &centers {
        let c = contraction.map.origin_of[hub];
        match &used_in_blob[c] {
            Some(used) if used.contains(&hub) => {
                for x in contraction.map.blob_of[c].iter() {
                    if x != hub && !used.contains(&x) {
                        deleted.insert(x);
                    }
                }
            }
            _ => {
                deleted.insert(hub);
            }
        }
    }
    let kept = graph.vertices().difference(&deleted);
    let (sub, ids) = graph.induced_subgraph(&kept)?;
    let flow_after = flow::flow_value(&sub, &ids.forward(a), &ids.forward(b))?;
    if flow_after < packing.len() {
        return Err(Error::Invariant(format!(
            "round lost flow: {flow_after} < contracted flow {}",
            packing.len()
        )));
    }
    for hub in centers.iter().filter(|&v| kept.contains(v)) {
        let id = ids.old_to_new[hub].expect("kept vertex");
        if sub.degree(id) > 2 {
            return Err(Error::Invariant(format!(
                "center {hub} keeps degree {}",
                sub.degree(id)
            )));
        }
    }
    let stats = RoundStats {
        round: 0,
        class_size,
        contracted: centers.len(),
        delta: graph.max_degree(),
        flow_before,
        contracted_flow: packing.len(),
        flow_after,
        deleted: deleted.len(),
    };
    Ok((kept, stats))
}

/// `(Δ+1)^(Δ²+1)`, or `None` when it does not fit in a `u128`.
pub fn degree_bound_factor(delta: usize) -> Option<u128> {
    let base = u128::try_from(delta).ok()?.checked_add(1)?;
    let exponent = u32::try_from(delta.checked_mul(delta)?.checked_add(1)?).ok()?;
    base.checked_pow(exponent)
}

/// `⌈flow / (Δ+1)^(Δ²+1)⌉`.
pub fn degree_guarantee(flow: usize, delta: usize) -> usize {
    match degree_bound_factor(delta) {
        Some(factor) => (flow as u128).div_ceil(factor) as usize,
        None => flow.min(1),
    }
}

/// Audit trail of [`sparsify_full`] and [`solve_bounded_degree`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsifyReport {
    pub rounds: usize,
    pub round_stats: Vec<RoundStats>,
    /// Maximum degree the guarantee is computed with.
    pub delta_used: usize,
    /// Maximum degree of the caller's graph before terminal gadgets, when known.
    pub delta_original: Option<usize>,
    /// Set when gadgets raised the maximum degree above `delta_original`.
    pub delta_raised_by_gadgets: bool,
    pub flow_initial: usize,
    pub flow_final: usize,
    /// `(Δ+1)^(Δ²+1)`; `None` if it overflows 128 bits.
    pub f_delta: Option<u128>,
    pub guarantee: usize,
}

/// Applies one contraction round per distance-3 independent class of
/// `V(G) \ N[A ∪ B]`, always running `Δ² + 1` rounds (empty ones as no-ops).
pub fn sparsify_full(
    graph: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<(VertexSet, SparsifyReport)> {
    let n = graph.n();
    a.check_range(n)?;
    b.check_range(n)?;
    let delta = graph.max_degree();
    let free = graph
        .vertices()
        .difference(&graph.closed_neighborhood(&a.union(b)));
    let mut classes = partition_distance3(graph, &free)?;
    let rounds = delta * delta + 1;
    if classes.len() > rounds {
        return Err(Error::Invariant(format!(
            "{} distance-3 classes exceed Δ²+1 = {rounds}",
            classes.len()
        )));
    }
    classes.resize(rounds, VertexSet::new());

    let flow_initial = flow::flow_value(graph, a, b)?;
    let mut kept = graph.vertices();
    let mut round_stats = Vec::with_capacity(rounds);
    for (round, class) in classes.iter().enumerate() {
        let (sub, ids) = graph.induced_subgraph(&kept)?;
        let centers = ids.forward(class);
        let (sub_kept, mut stats) =
            sparsify_round(&sub, &ids.forward(a), &ids.forward(b), &centers)?;
        stats.round = round;
        if !stats.bound_holds() {
            return Err(Error::Invariant(format!("round {round} violates the flow bound")));
        }
        kept = ids.backward(&sub_kept);
        round_stats.push(stats);
    }
    let flow_final = round_stats
        .last()
        .map_or(flow_initial, |stats| stats.flow_after);
    let report = SparsifyReport {
        rounds,
        round_stats,
        delta_used: delta,
        delta_original: None,
        delta_raised_by_gadgets: false,
        flow_initial,
        flow_final,
        f_delta: degree_bound_factor(delta),
        guarantee: degree_guarantee(flow_initial, delta),
    };
    if flow_final < report.guarantee {
        return Err(Error::Invariant(format!(
            "final flow {flow_final} below guarantee {}",
            report.guarantee
        )));
    }
    Ok((kept, report))
}

/// Output of [`solve_bounded_degree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedDegreeSolution {
    /// Vertex-disjoint, pairwise anticomplete `(A, B)`-paths of the input graph.
    pub paths: PathSystem,
    pub report: SparsifyReport,
    /// Minimum separator, present when no `(A, B)`-path exists.
    pub separator: Option<SeparatorCertificate>,
}

/// Vertex-disjoint, pairwise anticomplete `(A, B)`-paths, at least
/// `⌈flow / (Δ+1)^(Δ²+1)⌉` many with `Δ` the maximum degree after gadgets.
pub fn solve_bounded_degree(
    graph: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<BoundedDegreeSolution> {
    let gadgeted = attach_terminal_gadgets(graph, a, b)?;
    let (kept, mut report) = sparsify_full(&gadgeted.graph, &gadgeted.a, &gadgeted.b)?;
    let original_flow = flow::flow_value(graph, a, b)?;
    if report.flow_initial != original_flow {
        return Err(Error::Invariant(format!(
            "gadgets changed the flow from {original_flow} to {}",
            report.flow_initial
        )));
    }
    report.delta_original = Some(graph.max_degree());
    report.delta_raised_by_gadgets = report.delta_used > graph.max_degree();

    let (remnant, ids) = gadgeted.graph.induced_subgraph(&kept)?;
    if remnant.max_degree() > 2 {
        return Err(Error::Invariant(format!(
            "sparsified graph keeps maximum degree {}",
            remnant.max_degree()
        )));
    }
    let packing = flow::max_disjoint_paths(&remnant, &ids.forward(&gadgeted.a), &ids.forward(&gadgeted.b))?;
    let lifted = PathSystem::new(
        &gadgeted.graph,
        packing.paths.iter().map(|p| ids.backward_path(p)).collect(),
    );
    let paths = strip_gadgets(graph, &lifted, &gadgeted.records)?;
    paths.validate(graph, a, b)?;
    if !paths.vertex_disjoint || !paths.pairwise_anticomplete {
        return Err(Error::Invariant(
            "degree-two endgame produced conflicting paths".into(),
        ));
    }
    if paths.len() < report.guarantee {
        return Err(Error::Invariant(format!(
            "{} paths below guarantee {}",
            paths.len(),
            report.guarantee
        )));
    }
    let separator = if original_flow == 0 {
        Some(flow::min_separator(graph, a, b)?)
    } else {
        None
    };
    Ok(BoundedDegreeSolution {
        paths,
        report,
        separator,
    })
}
