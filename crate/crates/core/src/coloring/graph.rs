use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `p <num_vertices>` header")]
    MissingHeader,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BTreeSet::new(), adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from 0-based edges, rejecting loops and repeats.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let e = (u.min(v), u.max(v));
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(e.0, e.1));
        }
        for (a, b) in [(u, v), (v, u)] {
            let pos = self.adj[a].partition_point(|&x| x < b);
            self.adj[a].insert(pos, b);
        }
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("simple")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0).expect("simple");
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Neighbours of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Subgraph induced by `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for &(u, v) in &self.edges {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.add_edge(pos[u], pos[v]).expect("induced edges are simple");
            }
        }
        g
    }

    /// Reads `p <n>` followed by one `u v` pair per line (1-based). Lines
    /// starting with `#` or `c` are comments.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut g: Option<Graph> = None;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') || t.starts_with("c ") || t == "c" {
                continue;
            }
            let parts: Vec<&str> = t.split_whitespace().collect();
            if parts[0] == "p" {
                if g.is_some() {
                    return Err(GraphError::Syntax { line, msg: "duplicate header".into() });
                }
                let n = match parts.as_slice() {
                    [_, n] => n.parse::<usize>().ok(),
                    [_, "edge", n, _] | [_, "edge", n] => n.parse::<usize>().ok(),
                    _ => None,
                }
                .ok_or_else(|| GraphError::Syntax { line, msg: format!("expected `p <num_vertices>`, got `{t}`") })?;
                g = Some(Graph::empty(n));
                continue;
            }
            let graph = g.as_mut().ok_or(GraphError::MissingHeader)?;
            let parts: &[&str] = if parts[0] == "e" { &parts[1..] } else { &parts };
            if parts.len() != 2 {
                return Err(GraphError::Syntax { line, msg: format!("expected `u v`, got `{t}`") });
            }
            let vert = |s: &str| -> Result<usize, GraphError> {
                let v: usize =
                    s.parse().map_err(|_| GraphError::Syntax { line, msg: format!("`{s}` is not a vertex") })?;
                if v == 0 {
                    return Err(GraphError::Syntax { line, msg: "vertices are numbered from 1".into() });
                }
                Ok(v - 1)
            };
            let (u, v) = (vert(parts[0])?, vert(parts[1])?);
            graph.add_edge(u, v).map_err(|e| match e {
                GraphError::VertexOutOfRange { vertex, n } => GraphError::VertexOutOfRange { vertex: vertex + 1, n },
                GraphError::SelfLoop(v) => GraphError::SelfLoop(v + 1),
                GraphError::DuplicateEdge(a, b) => GraphError::DuplicateEdge(a + 1, b + 1),
                other => other,
            })?;
        }
        g.ok_or(GraphError::MissingHeader)
    }

    pub fn emit(&self) -> String {
        let mut out = format!("p {}\n", self.n);
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", u + 1, v + 1).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_emit_round_trip() {
        let g = Graph::parse("# triangle\np 3\n1 2\n2 3\n1 3\n").unwrap();
        assert_eq!(g.num_edges(), 3);
        assert_eq!(Graph::parse(&g.emit()).unwrap(), g);
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Graph::parse("p 2\n1 1\n"), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::parse("p 2\n1 2\n2 1\n"), Err(GraphError::DuplicateEdge(1, 2)));
        assert_eq!(Graph::parse("1 2\n"), Err(GraphError::MissingHeader));
        assert!(matches!(Graph::parse("p 2\n1 3\n"), Err(GraphError::VertexOutOfRange { vertex: 3, .. })));
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::cycle(5).induced(&[0, 1, 2]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }
}
