//! Text formats.
//!
//! Graph files (`.cg`): a header `n r`, then one edge per line as `u v c`
//! with 0-based vertices and colour `c` in `1..=r`, or `u v` for an
//! uncoloured edge. A plain graph uses `r = 0` and only uncoloured edges.
//!
//! Hypergraph files (`.hg`): a header `r s_1 ... s_r` with the part sizes,
//! then one edge per line as `r` 1-based indices, one per part.
//!
//! In both formats blank lines and text after `#` are ignored.

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Graph};
use crate::hypergraph::PartiteHypergraph;
use std::fmt::Write as _;
use std::path::Path;

/// Contents of a graph file; `colours[i]` is 0 for an uncoloured edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub r: usize,
    pub colours: Vec<usize>,
}

impl GraphFile {
    pub fn into_coloured(self) -> Result<ColouredGraph> {
        if let Some(i) = self.colours.iter().position(|&c| c == 0) {
            let (u, v) = self.graph.edges()[i];
            return Err(Error::Invalid(format!("edge ({u}, {v}) has no colour")));
        }
        ColouredGraph::with_colouring(self.graph, self.r, self.colours)
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number(line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse { line, msg: format!("expected a non-negative integer, got {token:?}") })
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or(Error::Parse { line: 0, msg: "missing header `n r`".into() })?;
    if header.len() != 2 {
        return Err(Error::Parse { line: hl, msg: "header must be `n r`".into() });
    }
    let (n, r) = (number(hl, header[0])?, number(hl, header[1])?);
    let mut triples = Vec::new();
    for (line, tokens) in it {
        let (u, v, c) = match tokens.as_slice() {
            [u, v] => (number(line, u)?, number(line, v)?, 0),
            [u, v, c] => (number(line, u)?, number(line, v)?, number(line, c)?),
            _ => return Err(Error::Parse { line, msg: "edge lines are `u v` or `u v colour`".into() }),
        };
        if u >= n || v >= n || u == v {
            return Err(Error::Parse { line, msg: format!("edge ({u}, {v}) is not a pair of distinct vertices below {n}") });
        }
        if c > r {
            return Err(Error::Parse { line, msg: format!("colour {c} exceeds r = {r}") });
        }
        triples.push((u.min(v), u.max(v), c));
    }
    triples.sort_unstable();
    if let Some(w) = triples.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
        return Err(Error::Parse { line: 0, msg: format!("edge ({}, {}) listed twice", w[0].0, w[0].1) });
    }
    let graph = Graph::new(n, triples.iter().map(|&(u, v, _)| (u, v)))?;
    Ok(GraphFile { graph, r, colours: triples.into_iter().map(|t| t.2).collect() })
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{} 0\n", g.n());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a string");
    }
    out
}

pub fn format_coloured(g: &ColouredGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.r());
    for (u, v, c) in g.coloured_edges() {
        writeln!(out, "{u} {v} {c}").expect("writing to a string");
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<PartiteHypergraph> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or(Error::Parse { line: 0, msg: "missing header `r s_1 ... s_r`".into() })?;
    let r = number(hl, header[0])?;
    if r == 0 || header.len() != r + 1 {
        return Err(Error::Parse { line: hl, msg: format!("header must list r = {r} part sizes") });
    }
    let sizes = header[1..].iter().map(|t| number(hl, t)).collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for (line, tokens) in it {
        if tokens.len() != r {
            return Err(Error::Parse { line, msg: format!("edge needs {r} entries") });
        }
        let e = tokens
            .iter()
            .zip(&sizes)
            .map(|(t, &s)| match number(line, t)? {
                x if x >= 1 && x <= s => Ok(x - 1),
                x => Err(Error::Parse { line, msg: format!("index {x} outside 1..={s}") }),
            })
            .collect::<Result<Vec<_>>>()?;
        edges.push(e);
    }
    PartiteHypergraph::new(sizes, edges)
}

pub fn format_hypergraph(h: &PartiteHypergraph) -> String {
    let mut out = h.r().to_string();
    for s in h.part_sizes() {
        write!(out, " {s}").expect("writing to a string");
    }
    out.push('\n');
    for e in h.edges() {
        let cells: Vec<String> = e.iter().map(|x| (x + 1).to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).expect("writing to a string");
    }
    out
}

pub fn read_graph(path: &Path) -> Result<GraphFile> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn read_hypergraph(path: &Path) -> Result<PartiteHypergraph> {
    parse_hypergraph(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures;

    #[test]
    fn hypergraph_round_trip() {
        let h = fixtures::four_disjoint_edges();
        let text = format_hypergraph(&h);
        assert!(text.starts_with("3 4 4 4\n1 3 3\n"));
        assert_eq!(parse_hypergraph(&text).unwrap(), h);
    }

    #[test]
    fn graph_round_trip_and_comments() {
        let g = ColouredGraph::new(3, 2, [(0, 1, 1), (1, 2, 2)]).unwrap();
        let text = format_coloured(&g);
        assert_eq!(parse_graph(&text).unwrap().into_coloured().unwrap(), g);
        let plain = parse_graph("# triangle\n3 0\n0 1\n1 2 # last\n0 2\n").unwrap();
        assert_eq!(plain.graph.edge_count(), 3);
        assert!(plain.clone().into_coloured().is_err());
        assert_eq!(parse_graph(&format_graph(&plain.graph)).unwrap().graph, plain.graph);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(parse_graph("2 1\n0 5 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hypergraph("2 2 2\n1 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_hypergraph("").is_err());
    }
}
