//! Edge-list text format.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v        (m lines, 0-indexed, u < v)
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_err = |line: usize, message: String| Error::Parse { line, message };
    let pair = |line: usize, s: &str| -> Result<(usize, usize)> {
        let mut it = s.split_whitespace();
        let a = it.next().and_then(|x| x.parse().ok());
        let b = it.next().and_then(|x| x.parse().ok());
        match (a, b, it.next()) {
            (Some(a), Some(b), None) => Ok((a, b)),
            _ => Err(parse_err(line, format!("expected two non-negative integers, got {s:?}"))),
        }
    };

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header \"n m\"".into()))?;
    let (n, m) = pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (line, s) in lines {
        let (u, v) = pair(line, s)?;
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex out of range for n = {n}: {u} {v}")));
        }
        if u > v {
            return Err(parse_err(line, format!("expected u < v, got {u} {v}")));
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(hline, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges)
}

/// Writes the canonical form: header, then edges in index order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * g.m() + 16);
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_edge_list(path: &std::path::Path) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::dross_barrier;

    #[test]
    fn parses_k4_and_single_edge() {
        let g = parse_edge_list("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        let g = parse_edge_list("# one edge\n3 1\n\n0 1\n").unwrap();
        assert_eq!((g.m(), g.triangle_count()), (1, 0));
    }

    #[test]
    fn errors_name_the_line() {
        let cases = [
            ("3 2\n0 1\n0 1\n", 3, "duplicate"),
            ("3 1\n0 3\n", 2, "out of range"),
            ("3 1\n1 1\n", 2, "self-loop"),
            ("3 1\n2 1\n", 2, "u < v"),
            ("3 2\n0 1\n", 1, "declares"),
            ("3 1\n0 x\n", 2, "integers"),
        ];
        for (text, line, needle) in cases {
            match parse_edge_list(text) {
                Err(Error::Parse { line: l, message }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert!(message.contains(needle), "{message}");
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn barrier_round_trip() {
        let g = dross_barrier(2).unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }
}
