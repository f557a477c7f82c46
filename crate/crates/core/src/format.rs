//! DIMACS-style instance files.
//!
//! ```text
//! c optional comments, anywhere
//! p ecoc <n> <m> <l> <k>
//! e <u> <v>          (m lines, 1-based ids)
//! ```

use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{ParseError, ParseErrorKind};
use crate::graph::{Graph, Label};
use crate::kernel::Instance;

/// Parses an instance file. Vertex `i` of the file becomes the vertex with
/// label `i`.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(usize, usize, usize, i64)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let err = |kind| ParseError { line: line_no, kind };
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(err(ParseErrorKind::DuplicateHeader));
                }
                let rest: Vec<&str> = tokens.collect();
                let parsed = match rest.as_slice() {
                    ["ecoc", n, m, l, k] => (|| Some((n.parse().ok()?, m.parse().ok()?, l.parse().ok()?, k.parse().ok()?)))(),
                    _ => None,
                };
                let (n, m, l, k): (usize, usize, usize, i64) =
                    parsed.ok_or_else(|| err(ParseErrorKind::MalformedHeader))?;
                if l == 0 {
                    return Err(err(ParseErrorKind::ZeroL));
                }
                if n > Label::MAX as usize {
                    return Err(err(ParseErrorKind::MalformedHeader));
                }
                header = Some((n, m, l, k));
            }
            Some("e") => {
                let Some((n, ..)) = header else {
                    return Err(err(ParseErrorKind::EdgeBeforeHeader));
                };
                let rest: Vec<&str> = tokens.collect();
                let (u, v): (u64, u64) = match rest.as_slice() {
                    [u, v] => match (u.parse(), v.parse()) {
                        (Ok(u), Ok(v)) => (u, v),
                        _ => return Err(err(ParseErrorKind::MalformedEdge)),
                    },
                    _ => return Err(err(ParseErrorKind::MalformedEdge)),
                };
                for x in [u, v] {
                    if x == 0 || x > n as u64 {
                        return Err(err(ParseErrorKind::VertexOutOfRange(x, n)));
                    }
                }
                if u == v {
                    return Err(err(ParseErrorKind::SelfLoop(u)));
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return Err(err(ParseErrorKind::DuplicateEdge(key.0, key.1)));
                }
                edges.push((u as usize - 1, v as usize - 1));
            }
            Some(_) => return Err(err(ParseErrorKind::UnknownLine)),
        }
    }
    let Some((n, m, l, k)) = header else {
        return Err(ParseError {
            line: last_line.max(1),
            kind: ParseErrorKind::MissingHeader,
        });
    };
    if edges.len() != m {
        return Err(ParseError {
            line: last_line.max(1),
            kind: ParseErrorKind::EdgeCountMismatch {
                expected: m,
                found: edges.len(),
            },
        });
    }
    let labels: Vec<Label> = (1..=n as Label).collect();
    let graph = Graph::with_labels(labels, &edges).expect("edges validated above");
    Ok(Instance { graph, k, l })
}

/// Writes an instance with vertices renumbered `1..=n` in ascending label
/// order and edges sorted ascending.
pub fn emit_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    writeln!(out, "p ecoc {} {} {} {}", g.num_vertices(), g.num_edges(), inst.l, inst.k).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(text: &str) -> (usize, ParseErrorKind) {
        let e = parse_instance(text).unwrap_err();
        (e.line, e.kind)
    }

    #[test]
    fn parses_examples() {
        let p2 = parse_instance("p ecoc 2 1 2 0\ne 1 2\n").unwrap();
        assert_eq!(p2.graph.num_vertices(), 2);
        assert!(p2.graph.has_edge(0, 1));
        assert_eq!((p2.l, p2.k), (2, 0));
        assert_eq!(p2.graph.labels(), &[1, 2]);

        let empty = parse_instance("p ecoc 0 0 1 0").unwrap();
        assert!(empty.graph.is_empty());

        let commented = parse_instance("c hello\np ecoc 3 1 1 1\nc mid\n\ne 3 1\n").unwrap();
        assert!(commented.graph.has_edge(0, 2));
    }

    #[test]
    fn reports_errors_with_lines() {
        assert_eq!(kind("e 1 2\n"), (1, ParseErrorKind::EdgeBeforeHeader));
        assert_eq!(kind("p ecoc 2 1 2\n"), (1, ParseErrorKind::MalformedHeader));
        assert_eq!(kind("p cnf 2 1 2 0\n"), (1, ParseErrorKind::MalformedHeader));
        assert_eq!(kind("p ecoc 2 1 0 0\n"), (1, ParseErrorKind::ZeroL));
        assert_eq!(kind("p ecoc 2 1 1 0\ne 1 3\n"), (2, ParseErrorKind::VertexOutOfRange(3, 2)));
        assert_eq!(kind("p ecoc 2 1 1 0\ne 0 1\n"), (2, ParseErrorKind::VertexOutOfRange(0, 2)));
        assert_eq!(kind("p ecoc 2 1 1 0\ne 2 2\n"), (2, ParseErrorKind::SelfLoop(2)));
        assert_eq!(
            kind("p ecoc 2 2 1 0\ne 1 2\nc\ne 2 1\n"),
            (4, ParseErrorKind::DuplicateEdge(1, 2))
        );
        assert_eq!(
            kind("p ecoc 3 2 1 0\ne 1 2\n"),
            (2, ParseErrorKind::EdgeCountMismatch { expected: 2, found: 1 })
        );
        assert_eq!(kind("p ecoc 2 0 1 0\np ecoc 2 0 1 0\n"), (2, ParseErrorKind::DuplicateHeader));
        assert_eq!(kind("c only\n"), (1, ParseErrorKind::MissingHeader));
        assert_eq!(kind("p ecoc 2 0 1 0\nx\n"), (2, ParseErrorKind::UnknownLine));
        assert_eq!(kind("p ecoc 2 1 1 0\ne 1 b\n"), (2, ParseErrorKind::MalformedEdge));
    }

    #[test]
    fn emits_examples() {
        let empty = parse_instance("p ecoc 0 0 3 2\n").unwrap();
        assert_eq!(emit_instance(&empty), "p ecoc 0 0 3 2\n");
        let text = "p ecoc 2 1 2 0\ne 1 2\n";
        assert_eq!(emit_instance(&parse_instance(text).unwrap()), text);
    }

    #[test]
    fn emit_renumbers_surviving_labels() {
        let inst = parse_instance("p ecoc 4 2 1 1\ne 1 2\ne 3 4\n").unwrap();
        let g = inst.graph.remove_vertices(&vec![0].into()).unwrap();
        let text = emit_instance(&Instance { graph: g, ..inst });
        assert_eq!(text, "p ecoc 3 1 1 1\ne 2 3\n");
    }
}
