//! Immutable simple undirected graphs.
//!
//! Vertices are the contiguous integers `0..n`. Each vertex stores a sorted,
//! duplicate-free neighbor list, so iteration order is deterministic and
//! membership tests are a binary search.
//!
//! The plain-text edge-list interchange format is:
//!
//! ```text
//! n m
//! u v      (m lines, 0-based, u < v)
//! ```

use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("vertex index {index} out of range for graph with {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("empty graph: regularity is undefined for n = 0")]
    EmptyGraph,

    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An undirected edge, normalized so that `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds an edge from two endpoints in either order.
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Validates and builds a graph on `n` vertices.
    ///
    /// Endpoint order inside each pair does not matter and repeated edges
    /// collapse to one. Self-loops and out-of-range indices are rejected.
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for edge in edges {
            let Edge { u, v } = edge.into();
            if v >= n {
                return Err(GraphError::VertexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut degree_sum = 0;
        for neighbors in &mut adjacency {
            neighbors.sort_unstable();
            neighbors.dedup();
            degree_sum += neighbors.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: degree_sum / 2,
        })
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                index: v,
                n: self.vertex_count(),
            })
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len())
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> Result<&[usize], GraphError> {
        self.check_vertex(v)?;
        Ok(&self.adjacency[v])
    }

    /// Degrees of all vertices, indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|neighbors| neighbors.binary_search(&v).is_ok())
    }

    /// Every edge exactly once, in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, neighbors)| {
                let start = neighbors.partition_point(|&w| w <= u);
                neighbors[start..].iter().map(move |&v| Edge { u, v })
            })
    }

    /// Returns `Some(k)` when every vertex has degree `k`.
    pub fn is_k_regular(&self) -> Result<Option<usize>, GraphError> {
        let first = self.adjacency.first().ok_or(GraphError::EmptyGraph)?.len();
        Ok(self
            .adjacency
            .iter()
            .all(|neighbors| neighbors.len() == first)
            .then_some(first))
    }

    /// Subgraph induced on the vertex range `start..end`, relabelled from 0.
    pub fn induced_range(&self, start: usize, end: usize) -> Result<Graph, GraphError> {
        if end > self.vertex_count() {
            return Err(GraphError::VertexOutOfRange {
                index: end,
                n: self.vertex_count(),
            });
        }
        let edges = self
            .edges()
            .filter(|e| e.u >= start && e.v < end)
            .map(|e| (e.u - start, e.v - start));
        Graph::new(end.saturating_sub(start), edges)
    }

    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{} {}", self.vertex_count(), self.edge_count())?;
        for edge in self.edges() {
            writeln!(out, "{edge}")?;
        }
        Ok(())
    }

    pub fn to_edge_list(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }

    /// Parses the edge-list format. The header edge count must match the
    /// number of edge lines, and every line must have `u < v`.
    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let parse_err = |line: usize, message: String| GraphError::Parse { line, message };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header".into()))?;
        let (n, m) = parse_pair(header).map_err(|msg| parse_err(1, msg))?;

        let mut edges = Vec::with_capacity(m);
        for (line_no, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (u, v) = parse_pair(line).map_err(|msg| parse_err(line_no, msg))?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u > v {
                return Err(parse_err(line_no, format!("expected u < v, got {u} {v}")));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(parse_err(
                1,
                format!("header declares {m} edges but {} were listed", edges.len()),
            ));
        }
        Graph::new(n, edges)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize), String> {
    let mut fields = line.split_whitespace();
    let mut next = || -> Result<usize, String> {
        let field = fields.next().ok_or("expected two integers")?;
        field
            .parse()
            .map_err(|_| format!("invalid integer {field:?}"))
    };
    let a = next()?;
    let b = next()?;
    if fields.next().is_some() {
        return Err("trailing fields".into());
    }
    Ok((a, b))
}
