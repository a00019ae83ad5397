//! Degeneracy-2 graphs of large girth where `A` and `B` need `k` vertices to
//! separate but no two vertex-disjoint anticomplete `(A, B)`-paths exist.
//!
//! With `p = max(2, ⌊g/2⌋)` the graph has rows `i ∈ [k]` that are paths
//! `v(i,1) - ... - v(i,pk+1)`, and for every `i` the vertex `v(i,pi)` is joined
//! to `v(j,pi)` for all `j ≠ i`. `A` is the first column and `B` the last.
//! Vertex `v(i,j)` (1-based) has id `(i-1)(pk+1) + (j-1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow;
use crate::graph::{Graph, VertexSet};
use crate::oracle::{self, OracleBudget};

pub const DEFAULT_ORACLE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleInstance {
    pub k: usize,
    pub g: usize,
    pub p: usize,
    pub graph: Graph,
    pub a: VertexSet,
    pub b: VertexSet,
}

impl CounterexampleInstance {
    pub fn columns(&self) -> usize {
        self.p * self.k + 1
    }

    /// Id of `v(i, j)` with 1-based `i` and `j`.
    pub fn vertex(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.columns() + (j - 1)
    }

    /// Center of the star in row `i`: `v(i, p·i)`.
    pub fn star_center(&self, i: usize) -> usize {
        self.vertex(i, self.p * i)
    }

    pub fn row(&self, i: usize) -> VertexSet {
        (1..=self.columns()).map(|j| self.vertex(i, j)).collect()
    }

    pub fn expected_girth(&self) -> usize {
        2 * self.p + 2
    }
}

pub fn generate(k: usize, g: usize) -> Result<CounterexampleInstance> {
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if g < 3 {
        return Err(Error::InvalidInput("g must be at least 3".into()));
    }
    let p = (g / 2).max(2);
    let columns = p * k + 1;
    let id = |i: usize, j: usize| (i - 1) * columns + (j - 1);
    let mut edges = Vec::with_capacity(k * (columns - 1) + k * (k - 1));
    for i in 1..=k {
        for j in 1..columns {
            edges.push((id(i, j), id(i, j + 1)));
        }
    }
    for i in 1..=k {
        for j in (1..=k).filter(|&j| j != i) {
            edges.push((id(i, p * i), id(j, p * i)));
        }
    }
    let graph = Graph::from_edges(k * columns, edges)?;
    Ok(CounterexampleInstance {
        k,
        g,
        p,
        graph,
        a: (1..=k).map(|i| id(i, 1)).collect(),
        b: (1..=k).map(|i| id(i, columns)).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub k: usize,
    pub g: usize,
    pub p: usize,
    pub vertices: usize,
    pub edges: usize,
    pub flow: usize,
    pub degeneracy: usize,
    pub girth: Option<usize>,
    pub packing: Option<usize>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Failed)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Failed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

fn check(name: &str, ok: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        status: if ok { CheckStatus::Passed } else { CheckStatus::Failed },
        detail,
    }
}

fn skipped(name: &str, detail: &str) -> Check {
    Check {
        name: name.to_string(),
        status: CheckStatus::Skipped,
        detail: detail.to_string(),
    }
}

/// Checks every claim about `instance`.
///
/// The exact packing oracle runs only when the instance has at most
/// `oracle_cap` vertices; the neighborhood-separator check that implies the
/// same bound runs on every instance, for every path of a maximum packing.
pub fn verify(instance: &CounterexampleInstance, oracle_cap: usize) -> Result<VerificationReport> {
    let graph = &instance.graph;
    let (a, b) = (&instance.a, &instance.b);
    let k = instance.k;
    let mut checks = Vec::new();

    let expected_edges = k * k * instance.p + k * (k - 1);
    checks.push(check(
        "structure",
        graph.n() == k * instance.columns() && graph.m() == expected_edges,
        format!("{} vertices, {} edges", graph.n(), graph.m()),
    ));

    let certificate = flow::menger(graph, a, b)?;
    let flow = certificate.paths.len();
    checks.push(check("flow", flow == k, format!("flow {flow}, expected {k}")));

    let (degeneracy, _) = graph.degeneracy();
    let girth = graph.girth();
    let packing;
    if k >= 2 {
        checks.push(check(
            "degeneracy",
            degeneracy == 2,
            format!("degeneracy {degeneracy}"),
        ));
        let expected = instance.expected_girth();
        checks.push(check(
            "girth",
            girth == Some(expected) && expected >= instance.g,
            format!("girth {girth:?}, expected {expected} >= {}", instance.g),
        ));
        if graph.n() <= oracle_cap {
            let budget = OracleBudget {
                max_vertices: oracle_cap,
                ..OracleBudget::default()
            };
            let value = oracle::max_anticomplete_packing(graph, a, b, &budget)?;
            packing = Some(value);
            checks.push(check("packing", value == 1, format!("max anticomplete packing {value}")));
        } else {
            packing = None;
            checks.push(skipped("packing", "instance above oracle cap"));
        }
    } else {
        packing = None;
        checks.push(check(
            "degeneracy",
            degeneracy <= 1,
            format!("degeneracy {degeneracy}"),
        ));
        checks.push(skipped("girth", "single row is acyclic"));
        checks.push(skipped("packing", "k = 1"));
    }

    let blocking: Vec<usize> = certificate
        .paths
        .paths
        .iter()
        .enumerate()
        .filter(|(_, path)| {
            let closed = graph.closed_neighborhood(&path.iter().copied().collect());
            !flow::is_separator(graph, a, b, &closed)
        })
        .map(|(i, _)| i)
        .collect();
    checks.push(check(
        "neighborhood-separator",
        blocking.is_empty(),
        if blocking.is_empty() {
            format!("N[P] separates for all {flow} packing paths")
        } else {
            format!("N[P] fails to separate for paths {blocking:?}")
        },
    ));

    let centers: VertexSet = (1..=k).map(|i| instance.star_center(i)).collect();
    let column_ok = flow::is_separator(graph, a, b, &centers)
        && (1..=k).all(|i| {
            let closed = graph.closed_neighborhood_of(instance.star_center(i));
            flow::is_separator(graph, a, b, &closed)
        });
    checks.push(check(
        "star-separators",
        column_ok,
        "star centers and each N[center] separate A from B".into(),
    ));

    Ok(VerificationReport {
        k,
        g: instance.g,
        p: instance.p,
        vertices: graph.n(),
        edges: graph.m(),
        flow,
        degeneracy,
        girth,
        packing,
        checks,
    })
}
