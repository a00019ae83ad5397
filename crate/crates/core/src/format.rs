//! Plain-text instance format.
//!
//! ```text
//! # comment
//! p <n> <m>
//! e <u> <v>      (0-based, u < v, one line per edge)
//! a <u>          (u ∈ A)
//! b <u>          (u ∈ B)
//! ```
//!
//! Fields are separated by single spaces and the file must end with a newline.
//! The writer emits the header, then edges in lexicographic order, then `a`
//! lines and `b` lines in ascending order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A graph together with its terminal sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub a: VertexSet,
    pub b: VertexSet,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_ids(line: usize, fields: &[&str], expected: usize) -> Result<Vec<usize>> {
    if fields.len() != expected {
        return Err(parse_error(
            line,
            format!("expected {expected} fields after the tag, found {}", fields.len()),
        ));
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| parse_error(line, format!("`{f}` is not a non-negative integer")))
        })
        .collect()
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    if !text.is_empty() && !text.ends_with('\n') {
        let last = text.lines().count();
        return Err(parse_error(last, "missing trailing newline"));
    }
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        if raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split(' ').collect();
        let (tag, rest) = fields.split_first().expect("split yields one field");
        match *tag {
            "p" => {
                if header.is_some() {
                    return Err(parse_error(line, "duplicate `p` header"));
                }
                let ids = parse_ids(line, rest, 2)?;
                header = Some((ids[0], ids[1]));
            }
            "e" | "a" | "b" => {
                let Some((n, _)) = header else {
                    return Err(parse_error(line, "`p` header must come first"));
                };
                let ids = parse_ids(line, rest, if *tag == "e" { 2 } else { 1 })?;
                if let Some(&bad) = ids.iter().find(|&&v| v >= n) {
                    return Err(parse_error(line, format!("vertex {bad} out of range 0..{n}")));
                }
                match *tag {
                    "e" => {
                        if ids[0] >= ids[1] {
                            return Err(parse_error(line, "edge endpoints must satisfy u < v"));
                        }
                        edges.push((ids[0], ids[1]));
                    }
                    "a" => a.push(ids[0]),
                    _ => b.push(ids[0]),
                }
            }
            "" => return Err(parse_error(line, "empty line")),
            other => return Err(parse_error(line, format!("unknown line tag `{other}`"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(parse_error(text.lines().count().max(1), "missing `p` header"));
    };
    let mut sorted = edges.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        let line = text
            .lines()
            .position(|l| l == format!("e {} {}", w[0].0, w[0].1))
            .map_or(0, |i| i + 1);
        return Err(parse_error(line, format!("duplicate edge {} {}", w[0].0, w[0].1)));
    }
    if edges.len() != m {
        return Err(parse_error(
            text.lines().count(),
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Instance {
        graph: Graph::from_edges(n, edges)?,
        a: VertexSet::from(a),
        b: VertexSet::from(b),
    })
}

pub fn write_instance(instance: &Instance) -> String {
    let graph = &instance.graph;
    let mut out = String::new();
    writeln!(out, "p {} {}", graph.n(), graph.m()).expect("write to string");
    for (u, v) in graph.edges() {
        writeln!(out, "e {u} {v}").expect("write to string");
    }
    for v in &instance.a {
        writeln!(out, "a {v}").expect("write to string");
    }
    for v in &instance.b {
        writeln!(out, "b {v}").expect("write to string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_file() {
        let text = "# one edge\np 2 1\ne 0 1\na 0\nb 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.graph, Graph::path(2));
        assert_eq!(inst.a, VertexSet::from([0]));
        assert_eq!(inst.b, VertexSet::from([1]));
        assert_eq!(write_instance(&inst), "p 2 1\ne 0 1\na 0\nb 1\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("p 2 1\ne 0 1", 2),
            ("p 2 1\ne 1 0\n", 2),
            ("p 2 1\ne 0 2\n", 2),
            ("e 0 1\n", 1),
            ("p 3 1\ne 0 1\nx 3\n", 3),
            ("p 3 2\ne 0 1\ne 0 1\n", 2),
            ("p 3 2\ne 0 1\n", 2),
            ("p 3 1\ne 0 1\na one\n", 3),
            ("p 3 1\n\ne 0 1\n", 2),
            ("p 3 0\np 3 0\n", 2),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?} parsed as {other:?}"),
            }
        }
    }

    #[test]
    fn empty_graph_round_trips() {
        let inst = Instance {
            graph: Graph::empty(3),
            a: VertexSet::new(),
            b: [2].into(),
        };
        let text = write_instance(&inst);
        assert_eq!(text, "p 3 0\nb 2\n");
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }
}
