//! The plain-text instance format.
//!
//! ```text
//! c optional comments
//! p bt <m> <n>
//! a x<i> y<j>
//! a y<j> x<i>
//! ```
//!
//! One `a` line per arc, tail first. Pairs without a line carry no arc.
//! Comment and blank lines are ignored on input; output has no comments and
//! lists arcs in canonical order.

use std::collections::HashSet;
use std::fmt::Write;

use thiserror::Error;

use crate::graph::{Arc, BipartiteDigraph, GraphError, VertexRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("missing `p bt <m> <n>` line")]
    MissingHeader,
    #[error("line {line}: second `p` line")]
    DuplicateHeader { line: usize },
    #[error("line {line}: arc before the `p` line")]
    ArcBeforeHeader { line: usize },
    #[error("line {line}: cannot parse {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

pub fn render(graph: &BipartiteDigraph) -> String {
    let mut out = format!("p bt {} {}\n", graph.m(), graph.n());
    for arc in graph.arcs() {
        writeln!(out, "a {} {}", arc.tail, arc.head).unwrap();
    }
    out
}

pub fn parse(text: &str) -> Result<BipartiteDigraph, FormatError> {
    let mut size: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();
    let mut seen = HashSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let malformed = || FormatError::Malformed { line, content: raw.to_string() };
        let fields: Vec<&str> = raw.split_ascii_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if size.is_some() {
                    return Err(FormatError::DuplicateHeader { line });
                }
                let [_, "bt", m, n] = fields[..] else { return Err(malformed()) };
                size = Some((m.parse().map_err(|_| malformed())?, n.parse().map_err(|_| malformed())?));
            }
            Some("a") => {
                let (m, n) = size.ok_or(FormatError::ArcBeforeHeader { line })?;
                let [_, tail, head] = fields[..] else { return Err(malformed()) };
                let arc = Arc::new(tail.parse().map_err(|_| malformed())?, head.parse().map_err(|_| malformed())?);
                let graph_err = |source| FormatError::Graph { line, source };
                let (x, y, _) = arc.pair().ok_or(graph_err(GraphError::SameSideArc(arc)))?;
                if x >= m {
                    return Err(graph_err(GraphError::OutOfRange(VertexRef::x(x))));
                }
                if y >= n {
                    return Err(graph_err(GraphError::OutOfRange(VertexRef::y(y))));
                }
                if !seen.insert((x, y)) {
                    return Err(graph_err(GraphError::DuplicatePair { x, y }));
                }
                arcs.push(arc);
            }
            Some(_) => return Err(malformed()),
        }
    }
    let (m, n) = size.ok_or(FormatError::MissingHeader)?;
    Ok(BipartiteDigraph::build(m, n, arcs).expect("arcs validated line by line"))
}
