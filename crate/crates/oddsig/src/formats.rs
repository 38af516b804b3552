//! Graph files: DIMACS `.col` and plain edge lists.
//!
//! DIMACS uses 1-based vertices (`p edge N M`, `e u v`, `c` comments). Edge
//! lists use 0-based `u v` lines and `#` comments; a `# vertices N` comment
//! fixes the vertex count, which otherwise is one more than the largest id.

use std::fmt::Write as _;

use oddsig_core::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p edge` header")]
    MissingHeader,
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn number(line: usize, tok: Option<&str>, what: &str) -> Result<usize, FormatError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("bad {what} `{tok}`")))
}

/// Parses DIMACS; the declared edge count must match (duplicates counted).
pub fn parse_dimacs(text: &str) -> Result<Graph, FormatError> {
    let mut n: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(syntax(line, "second `p` line"));
                }
                match toks.next() {
                    Some("edge" | "col") => {}
                    other => return Err(syntax(line, format!("unsupported format {other:?}"))),
                }
                let v = number(line, toks.next(), "vertex count")?;
                let m = number(line, toks.next(), "edge count")?;
                n = Some((v, m));
            }
            Some("e") => {
                let (v, _) = n.ok_or(FormatError::MissingHeader)?;
                let a = number(line, toks.next(), "endpoint")?;
                let b = number(line, toks.next(), "endpoint")?;
                if a == 0 || b == 0 || a > v || b > v {
                    return Err(syntax(line, format!("endpoint out of 1..={v}")));
                }
                edges.push((a - 1, b - 1));
            }
            Some(other) => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let (v, m) = n.ok_or(FormatError::MissingHeader)?;
    if m != edges.len() {
        return Err(FormatError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::simple(v, edges)?)
}

/// DIMACS with each comment on its own `c` line.
pub fn write_dimacs(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for l in c.lines() {
            writeln!(out, "c {l}").expect("string write");
        }
    }
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).expect("string write");
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("string write");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut toks = comment.split_whitespace();
            if toks.next() == Some("vertices") {
                declared = Some(number(line, toks.next(), "vertex count")?);
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let a = number(line, toks.next(), "endpoint")?;
        let b = number(line, toks.next(), "endpoint")?;
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
        edges.push((a, b));
    }
    let implied = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    let n = declared.unwrap_or(implied);
    Ok(Graph::simple(n, edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# vertices {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("string write");
    }
    out
}

/// DIMACS if a `p` line is present, an edge list otherwise.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let is_dimacs = text
        .lines()
        .any(|l| matches!(l.split_whitespace().next(), Some("p")));
    if is_dimacs {
        parse_dimacs(text)
    } else {
        parse_edge_list(text)
    }
}
