//! Undirected simple graphs, DIMACS `.col` reading and writing, and the
//! interval-graph builder used for resource allocation.

use std::fmt::Write as _;

use thiserror::Error;

pub mod families;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("missing problem line `p edge N M`")]
    MissingProblemLine,
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("interval request list is empty")]
    NoRequests,
    #[error("interval request {id:?} has end {end} <= start {start}")]
    EmptyInterval { id: String, start: f64, end: f64 },
}

/// Immutable undirected simple graph on vertices `0..n`.
///
/// Edges are stored once with `u < v`, sorted. The adjacency lists are the
/// implicit symmetric adjacency matrix: `v` appears in `adj(u)` exactly when
/// `u` appears in `adj(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    name: Option<String>,
}

impl Graph {
    /// Builds a graph from 0-indexed edges. Duplicates (in either
    /// orientation) collapse to one edge; self-loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut normalized = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        normalized.dedup();

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges: normalized,
            adjacency,
            name: None,
        })
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, std::iter::empty())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbours of `v`. Panics if `v >= n`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        self.adjacency
            .get(v)
            .map(Vec::len)
            .ok_or(GraphError::VertexOutOfRange { vertex: v, n: self.n })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }
}

/// A non-fatal observation made while reading a DIMACS file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    DuplicateEdge { line: usize, u: usize, v: usize },
    EdgeCountMismatch { declared: usize, actual: usize },
}

/// Parses DIMACS `.col` text, logging any warnings.
pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let (graph, warnings) = parse_dimacs_with_warnings(text)?;
    for w in &warnings {
        match w {
            ParseWarning::DuplicateEdge { line, u, v } => {
                log::warn!("line {line}: duplicate edge {u}-{v} ignored")
            }
            ParseWarning::EdgeCountMismatch { declared, actual } => {
                log::warn!("problem line declares {declared} edges, found {actual} distinct")
            }
        }
    }
    Ok(graph)
}

pub fn parse_dimacs_with_warnings(text: &str) -> Result<(Graph, Vec<ParseWarning>), GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw_edges = Vec::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let parse_err = |reason: String| GraphError::Parse {
            line: line_no,
            reason,
        };
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err("second problem line".into()));
                }
                let format = fields.next();
                if !matches!(format, Some("edge") | Some("col")) {
                    return Err(parse_err(format!("unsupported problem format {format:?}")));
                }
                let n = parse_count(fields.next(), "vertex count").map_err(parse_err)?;
                let m = parse_count(fields.next(), "edge count").map_err(parse_err)?;
                if fields.next().is_some() {
                    return Err(parse_err("trailing fields on problem line".into()));
                }
                if n == 0 {
                    return Err(parse_err("vertex count must be at least 1".into()));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(parse_err("edge line before problem line".into()));
                };
                let u = parse_count(fields.next(), "edge endpoint").map_err(parse_err)?;
                let v = parse_count(fields.next(), "edge endpoint").map_err(parse_err)?;
                if fields.next().is_some() {
                    return Err(parse_err("trailing fields on edge line".into()));
                }
                for w in [u, v] {
                    if w < 1 || w > n {
                        return Err(parse_err(format!("vertex {w} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_err(format!("self-loop on vertex {u}")));
                }
                raw_edges.push((line_no, u - 1, v - 1));
            }
            Some(other) => return Err(parse_err(format!("unrecognized line type {other:?}"))),
            None => unreachable!("blank lines are skipped"),
        }
    }

    let (n, declared) = header.ok_or(GraphError::MissingProblemLine)?;
    let mut seen = std::collections::HashSet::with_capacity(raw_edges.len());
    for &(line, u, v) in &raw_edges {
        if !seen.insert((u.min(v), u.max(v))) {
            warnings.push(ParseWarning::DuplicateEdge {
                line,
                u: u + 1,
                v: v + 1,
            });
        }
    }
    let graph = Graph::from_edges(n, raw_edges.into_iter().map(|(_, u, v)| (u, v)))?;
    if graph.m() != declared {
        warnings.push(ParseWarning::EdgeCountMismatch {
            declared,
            actual: graph.m(),
        });
    }
    Ok((graph, warnings))
}

fn parse_count(field: Option<&str>, what: &str) -> Result<usize, String> {
    let field = field.ok_or_else(|| format!("missing {what}"))?;
    field
        .parse()
        .map_err(|_| format!("invalid {what} {field:?}"))
}

/// Canonical DIMACS text: the problem line, then 1-indexed edges sorted by
/// (min endpoint, max endpoint). Lines are joined by `\n` with no trailing
/// newline.
pub fn serialize_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = write!(out, "\ne {} {}", u + 1, v + 1);
    }
    out
}

/// A time interval requested for some resource.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalRequest {
    pub id: String,
    pub start: f64,
    pub end: f64,
}

impl IntervalRequest {
    pub fn new(id: impl Into<String>, start: f64, end: f64) -> Self {
        Self {
            id: id.into(),
            start,
            end,
        }
    }

    /// Open-interval overlap; touching endpoints do not conflict.
    pub fn overlaps(&self, other: &IntervalRequest) -> bool {
        self.start < other.end && other.start < self.end
    }
}

/// One vertex per request (in input order), with an edge between every pair
/// of overlapping requests.
pub fn build_interval_graph(requests: &[IntervalRequest]) -> Result<Graph, GraphError> {
    if requests.is_empty() {
        return Err(GraphError::NoRequests);
    }
    for r in requests {
        if !(r.end > r.start) {
            return Err(GraphError::EmptyInterval {
                id: r.id.clone(),
                start: r.start,
                end: r.end,
            });
        }
    }
    let mut edges = Vec::new();
    for (i, a) in requests.iter().enumerate() {
        for (j, b) in requests.iter().enumerate().skip(i + 1) {
            if a.overlaps(b) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(requests.len(), edges)
}
