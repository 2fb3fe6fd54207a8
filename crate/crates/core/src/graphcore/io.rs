//! Plain-text formats.
//!
//! ```text
//! graph <n>          uhg <a> <n>          ohg <a> <n>
//! u v                v1 v2 .. va          v1 v2 .. va   (order kept)
//! ```
//!
//! Vertex ids are 0-based; blank lines and lines starting with `#` are
//! ignored.

use std::fmt::Write as _;

use super::graph::Graph;
use super::hypergraph::{OrientedHypergraph, UniformHypergraph};
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("expected a non-negative integer, found {t:?}"),
            })
        })
        .collect()
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    arity: usize,
) -> Result<Vec<usize>> {
    let (line, text) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: format!("missing `{keyword}` header"),
    })?;
    let mut parts = text.splitn(2, char::is_whitespace);
    if parts.next() != Some(keyword) {
        return Err(Error::Parse {
            line,
            msg: format!("expected `{keyword}` header"),
        });
    }
    let vals = numbers(line, parts.next().unwrap_or(""))?;
    if vals.len() != arity {
        return Err(Error::Parse {
            line,
            msg: format!("`{keyword}` header takes {arity} numbers"),
        });
    }
    Ok(vals)
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line,
            msg: other.to_string(),
        },
    })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "graph", 1)?[0];
    let mut g = Graph::new(n);
    for (line, l) in lines {
        let v = numbers(line, l)?;
        if v.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: "an edge line needs exactly two vertices".into(),
            });
        }
        at_line(line, g.add_edge(v[0], v[1]))?;
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("graph {}\n", g.n());
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn parse_uniform(text: &str) -> Result<UniformHypergraph> {
    let mut lines = content_lines(text);
    let h = header(&mut lines, "uhg", 2)?;
    let mut hg = UniformHypergraph::new(h[0], h[1]);
    for (line, l) in lines {
        let e = numbers(line, l)?;
        at_line(line, hg.add_edge(&e))?;
    }
    Ok(hg)
}

pub fn write_uniform(h: &UniformHypergraph) -> String {
    let mut s = format!("uhg {} {}\n", h.a(), h.n());
    for e in h.edges() {
        s.push_str(&join(e));
        s.push('\n');
    }
    s
}

pub fn parse_oriented(text: &str) -> Result<OrientedHypergraph> {
    let mut lines = content_lines(text);
    let h = header(&mut lines, "ohg", 2)?;
    let mut o = OrientedHypergraph::new(h[0], h[1]);
    for (line, l) in lines {
        let e = numbers(line, l)?;
        at_line(line, o.add_edge(&e))?;
    }
    Ok(o)
}

pub fn write_oriented(o: &OrientedHypergraph) -> String {
    let mut s = format!("ohg {} {}\n", o.a(), o.n());
    for e in o.edges() {
        s.push_str(&join(e));
        s.push('\n');
    }
    s
}

/// Class file for `extract`: the first content line lists class `A` in
/// order; an optional second line lists class `B` in order (otherwise the
/// remaining vertices in ascending order).
pub fn parse_classes(text: &str, n: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "class file is empty".into(),
    })?;
    let a = numbers(line, first)?;
    let b = match lines.next() {
        Some((line, l)) => numbers(line, l)?,
        None => {
            let mut in_a = vec![false; n];
            for &v in &a {
                if v < n {
                    in_a[v] = true;
                }
            }
            (0..n).filter(|&v| !in_a[v]).collect()
        }
    };
    Ok((a, b))
}

fn join(e: &[usize]) -> String {
    e.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_graph("# a path\ngraph 3\n0 1\n\n# middle\n1 2\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        let h = parse_uniform("uhg 3 5\n4 0 2\n1 2 3\n").unwrap();
        assert_eq!(h.edges(), &[vec![0, 2, 4], vec![1, 2, 3]]);
        assert_eq!(write_uniform(&h), "uhg 3 5\n0 2 4\n1 2 3\n");
        let o = parse_oriented("ohg 2 4\n3 1\n").unwrap();
        assert_eq!(write_oriented(&o), "ohg 2 4\n3 1\n");
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse_graph("graph 3\n0 1\n0 0\n"),
            Err(Error::Parse {
                line: 3,
                msg: "self-loop at vertex 0".into()
            })
        );
        assert!(matches!(
            parse_graph("uhg 3 3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("graph 3\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_uniform("uhg 3 4\n0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn class_file() {
        assert_eq!(parse_classes("2 0\n", 4).unwrap(), (vec![2, 0], vec![1, 3]));
        assert_eq!(
            parse_classes("0\n3 2 1\n", 4).unwrap(),
            (vec![0], vec![3, 2, 1])
        );
    }

    proptest! {
        #[test]
        fn graph_text_round_trip(n in 2usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..30)) {
            let mut g = Graph::new(n);
            for (u, v) in raw {
                let _ = g.add_edge(u % n, v % n);
            }
            prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }
    }
}
