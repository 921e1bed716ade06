//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! n 4
//! root 0        (optional)
//! 0 1 1
//! 1 2 2
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, RootedGraph};

/// Parsed contents of an edge-list file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    pub graph: Multigraph,
    pub root: Option<usize>,
}

impl EdgeList {
    pub fn rooted(&self) -> Option<Result<RootedGraph>> {
        self.root.map(|r| RootedGraph::new(self.graph.clone(), r))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut graph: Option<Multigraph> = None;
    let mut root = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["n", count] => {
                if graph.is_some() {
                    return Err(parse_err(line, "duplicate `n` header"));
                }
                graph = Some(Multigraph::new(parse_num(count, line, "vertex count")?));
            }
            ["root", id] => {
                if root.is_some() {
                    return Err(parse_err(line, "duplicate `root` header"));
                }
                root = Some(parse_num::<usize>(id, line, "root id")?);
            }
            [u, v, k] => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "edge before `n` header"))?;
                let u = parse_num(u, line, "vertex id")?;
                let v = parse_num(v, line, "vertex id")?;
                let k = parse_num(k, line, "multiplicity")?;
                g.add_edge(u, v, k)
                    .map_err(|e| parse_err(line, e.to_string()))?;
            }
            _ => return Err(parse_err(line, format!("unrecognised line `{}`", raw.trim()))),
        }
    }
    let graph = graph.ok_or_else(|| parse_err(0, "missing `n` header"))?;
    if let Some(r) = root {
        if r >= graph.n_vertices() {
            return Err(parse_err(0, format!("root {r} out of range")));
        }
    }
    Ok(EdgeList { graph, root })
}

pub fn write_edge_list(graph: &Multigraph, root: Option<usize>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n {}", graph.n_vertices());
    if let Some(r) = root {
        let _ = writeln!(out, "root {r}");
    }
    for (u, v, k) in graph.edges() {
        let _ = writeln!(out, "{u} {v} {k}");
    }
    out
}

pub fn write_rooted(g: &RootedGraph) -> String {
    write_edge_list(g.graph(), Some(g.root()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Multigraph::from_edges(4, [(0, 1, 1), (1, 2, 2), (2, 3, 1)]).unwrap();
        let text = write_edge_list(&g, Some(0));
        let parsed = parse_edge_list(&text).unwrap();
        assert_eq!(parsed.graph, g);
        assert_eq!(parsed.root, Some(0));
    }

    #[test]
    fn tolerates_whitespace_and_comments() {
        let text = "# header\n  n   3 \n\n0\t1 1  # first\n 1 2   1\n";
        let parsed = parse_edge_list(text).unwrap();
        assert_eq!(parsed.graph.edge_count(), 2);
        assert_eq!(parsed.root, None);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_edge_list("n 3\n0 1 1\n0 x 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("n 3\n0 5 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_edge_list("0 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(parse_edge_list("n 2\n0 1 0\n").is_err());
        assert!(parse_edge_list("n 2\nroot 4\n").is_err());
    }
}
