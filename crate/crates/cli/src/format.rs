//! Edge-list documents and DOT output.
//!
//! An edge list is one arc per line, `tail head`, with 0-based vertices.
//! An optional first data line `n <count>` fixes the vertex count; without it
//! the count is one more than the largest index used. `#` starts a comment
//! and blank lines are skipped.

use std::collections::HashSet;
use std::fmt::Write as _;

use maxline::{Digraph, LineDigraph};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: maxline::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Edges,
    Dot,
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, FormatError> {
    let mut declared: Option<usize> = None;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut saw_data = false;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse_err = |reason: String| FormatError::Parse { line, reason };

        if fields[0] == "n" {
            if saw_data {
                return Err(parse_err("the `n <count>` header must come before any arc".into()));
            }
            if fields.len() != 2 {
                return Err(parse_err("expected `n <count>`".into()));
            }
            let count = fields[1]
                .parse::<usize>()
                .map_err(|_| parse_err(format!("invalid vertex count `{}`", fields[1])))?;
            declared = Some(count);
            saw_data = true;
            continue;
        }
        saw_data = true;
        if fields.len() != 2 {
            return Err(parse_err(format!(
                "expected `tail head`, found {} field(s)",
                fields.len()
            )));
        }
        let mut ends = [0usize; 2];
        for (slot, field) in ends.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .map_err(|_| parse_err(format!("invalid vertex `{field}`")))?;
        }
        let [tail, head] = ends;
        let graph_err = |source| FormatError::Graph { line, source };
        if tail == head {
            return Err(graph_err(maxline::Error::LoopArc { vertex: tail }));
        }
        if let Some(n) = declared {
            if let Some(&v) = ends.iter().find(|&&v| v >= n) {
                return Err(graph_err(maxline::Error::VertexOutOfRange { vertex: v, n }));
            }
        }
        if !seen.insert((tail, head)) {
            return Err(graph_err(maxline::Error::DuplicateArc { tail, head }));
        }
        arcs.push((tail, head));
    }

    let n = declared.unwrap_or_else(|| {
        arcs.iter()
            .map(|&(t, h)| t.max(h) + 1)
            .max()
            .unwrap_or(0)
    });
    Digraph::from_arcs(n, arcs).map_err(|source| FormatError::Graph { line: 0, source })
}

pub fn emit(g: &Digraph, format: Format) -> String {
    match format {
        Format::Edges => emit_edges(g),
        Format::Dot => emit_dot(g, |_| None),
    }
}

/// `L(G)` followed by its vertex labels. In edge-list form the labels are
/// comment lines, so the output still parses as an edge list.
pub fn emit_line_digraph(line: &LineDigraph, format: Format) -> String {
    match format {
        Format::Edges => {
            let mut out = emit_edges(&line.graph);
            out.push_str("# vertex: root arc\n");
            for (i, a) in line.labels.iter().enumerate() {
                let _ = writeln!(out, "# {i}: {} {}", a.tail, a.head);
            }
            out
        }
        Format::Dot => emit_dot(&line.graph, |v| {
            let a = line.labels[v];
            Some(format!("{} {}", a.tail, a.head))
        }),
    }
}

fn emit_edges(g: &Digraph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for a in g.arcs() {
        let _ = writeln!(out, "{} {}", a.tail, a.head);
    }
    out
}

fn emit_dot(g: &Digraph, label: impl Fn(usize) -> Option<String>) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        match label(v) {
            Some(l) => {
                let _ = writeln!(out, "  {v} [label=\"{l}\"];");
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for a in g.arcs() {
        let _ = writeln!(out, "  {} -> {};", a.tail, a.head);
    }
    out.push_str("}\n");
    out
}
