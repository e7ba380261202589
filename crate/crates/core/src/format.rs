//! The `.3g` edge-list format.
//!
//! ```text
//! # optional comments
//! n m
//! a b c      (m lines, 0-indexed, ascending)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::hypergraph::{GraphBuilder, GraphError, ThreeGraph};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn numbers(line: &str, lineno: usize, count: usize) -> Result<Vec<usize>, FormatError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != count {
        return Err(FormatError::Syntax {
            line: lineno,
            msg: format!("expected {count} integers, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>().map_err(|_| FormatError::Syntax {
                line: lineno,
                msg: format!("not a vertex index: {f:?}"),
            })
        })
        .collect()
}

pub fn parse_3g_str(text: &str) -> Result<ThreeGraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let h = numbers(header, hline, 2)?;
    let (n, m) = (h[0], h[1]);
    if n == 0 {
        return Err(FormatError::Graph {
            line: hline,
            source: GraphError::NoVertices,
        });
    }
    let mut b = GraphBuilder::new(n);
    let mut found = 0;
    for (lineno, line) in lines {
        let v = numbers(line, lineno, 3)?;
        if !(v[0] < v[1] && v[1] < v[2]) && v[0] != v[1] && v[1] != v[2] && v[0] != v[2] {
            return Err(FormatError::Syntax {
                line: lineno,
                msg: format!("vertices {} {} {} are not ascending", v[0], v[1], v[2]),
            });
        }
        b.add_strict(v[0], v[1], v[2])
            .map_err(|source| FormatError::Graph { line: lineno, source })?;
        found += 1;
    }
    if found != m {
        return Err(FormatError::EdgeCount { expected: m, found });
    }
    Ok(b.build())
}

pub fn parse_3g(path: impl AsRef<Path>) -> Result<ThreeGraph, FormatError> {
    parse_3g_str(&fs::read_to_string(path)?)
}

/// Serializes with optional leading comment lines.
pub fn to_3g_string(h: &ThreeGraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "{} {}", h.n(), h.num_edges());
    for t in h.edges() {
        let _ = writeln!(out, "{} {} {}", t.a, t.b, t.c);
    }
    out
}

pub fn write_3g(h: &ThreeGraph, path: impl AsRef<Path>) -> Result<(), FormatError> {
    fs::write(path, to_3g_string(h, &[]))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_complete() {
        let k6 = ThreeGraph::complete(6);
        let text = to_3g_string(&k6, &["complete".into()]);
        assert_eq!(parse_3g_str(&text).unwrap(), k6);
    }

    #[test]
    fn rejects_repeated_vertex() {
        let err = parse_3g_str("6 1\n0 0 1\n").unwrap_err();
        assert!(matches!(
            err,
            FormatError::Graph { line: 2, source: GraphError::RepeatedVertex(0, 0, 1) }
        ));
    }

    #[test]
    fn rejects_duplicate_edge() {
        let err = parse_3g_str("6 2\n0 1 2\n# again\n0 1 2\n").unwrap_err();
        assert!(matches!(err, FormatError::Graph { line: 4, source: GraphError::DuplicateEdge(_) }));
    }

    #[test]
    fn rejects_descending_and_bad_counts() {
        assert!(matches!(
            parse_3g_str("6 1\n2 1 0\n").unwrap_err(),
            FormatError::Syntax { line: 2, .. }
        ));
        assert!(matches!(
            parse_3g_str("6 2\n0 1 2\n").unwrap_err(),
            FormatError::EdgeCount { expected: 2, found: 1 }
        ));
        assert!(matches!(parse_3g_str("# only\n").unwrap_err(), FormatError::MissingHeader));
        assert!(matches!(
            parse_3g_str("6 1\n0 1 x\n").unwrap_err(),
            FormatError::Syntax { line: 2, .. }
        ));
    }
}
