//! Undirected simple graphs with dense symmetric 0/1 adjacency.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub mod generators;
pub mod karate;

/// An undirected simple graph on nodes `0..n`.
///
/// The adjacency matrix is dense, symmetric, zero on the diagonal, and
/// contains only 0/1 entries; these invariants are checked on every
/// construction path. Nodes may carry optional string labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    adjacency: DMatrix<f64>,
    labels: Vec<Option<String>>,
}

impl Graph {
    /// Build a graph from an explicit edge list.
    ///
    /// Rejects out-of-range endpoints, self-loops, and duplicate edges
    /// (in either orientation).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("node count must be at least 1".into()));
        }
        let mut adjacency = DMatrix::<f64>::zeros(n, n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                return Err(Error::Parameter(format!("self-loop at node {u}")));
            }
            if adjacency[(u, v)] != 0.0 {
                return Err(Error::Parameter(format!("duplicate edge ({u}, {v})")));
            }
            adjacency[(u, v)] = 1.0;
            adjacency[(v, u)] = 1.0;
        }
        Ok(Self {
            n,
            adjacency,
            labels: vec![None; n],
        })
    }

    /// Build a graph from a dense adjacency matrix, validating all invariants.
    pub fn from_adjacency(adjacency: DMatrix<f64>) -> Result<Self> {
        let n = adjacency.nrows();
        if n == 0 || adjacency.ncols() != n {
            return Err(Error::Parameter(format!(
                "adjacency must be square and non-empty, got {}x{}",
                adjacency.nrows(),
                adjacency.ncols()
            )));
        }
        for i in 0..n {
            if adjacency[(i, i)] != 0.0 {
                return Err(Error::Parameter(format!("nonzero diagonal at node {i}")));
            }
            for j in (i + 1)..n {
                let a = adjacency[(i, j)];
                if a != adjacency[(j, i)] {
                    return Err(Error::Parameter(format!(
                        "asymmetric entries at ({i}, {j})"
                    )));
                }
                if a != 0.0 && a != 1.0 {
                    return Err(Error::Parameter(format!(
                        "entry ({i}, {j}) = {a} is not 0 or 1"
                    )));
                }
            }
        }
        Ok(Self {
            n,
            adjacency,
            labels: vec![None; n],
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &DMatrix<f64> {
        &self.adjacency
    }

    pub fn edge_count(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adjacency[(i, j)] != 0.0 {
                    count += 1;
                }
            }
        }
        count
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adjacency[(i, j)] != 0.0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency.row(node).iter().map(|&a| a as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Whether every node is reachable from node 0.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for v in 0..self.n {
                if self.adjacency[(u, v)] != 0.0 && !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.n
    }

    pub fn label(&self, node: usize) -> Option<&str> {
        self.labels.get(node).and_then(|l| l.as_deref())
    }

    pub fn set_label(&mut self, node: usize, label: impl Into<String>) {
        self.labels[node] = Some(label.into());
    }

    /// First node carrying the given label, if any.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l.as_deref() == Some(label))
    }

    /// Parse the plain-text edge-list format: one `u v` pair per line,
    /// 0-indexed, each undirected edge listed once. Lines starting with `#`
    /// and blank lines are skipped. The node count is the largest endpoint
    /// plus one.
    pub fn from_edge_list_str(text: &str) -> Result<Self> {
        let edges = parse_edge_list(text)?;
        let n = edges
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .ok_or_else(|| Error::Parameter("edge list contains no edges".into()))?;
        Self::from_edges(n, &edges)
    }

    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_edge_list_str(&text)
    }

    /// Serialize to the edge-list format accepted by [`Graph::from_edge_list_str`].
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_edge_list_string())?;
        Ok(())
    }
}

/// Parse edge-list text, rejecting self-loops and duplicate edges.
pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or_else(|| Error::Format {
                line: idx + 1,
                message: "expected two node indices".into(),
            })?
            .parse()
            .map_err(|e| Error::Format {
                line: idx + 1,
                message: format!("bad node index: {e}"),
            })
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::Format {
                line: idx + 1,
                message: "expected exactly two node indices".into(),
            });
        }
        if u == v {
            return Err(Error::Format {
                line: idx + 1,
                message: format!("self-loop at node {u}"),
            });
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(Error::Format {
                line: idx + 1,
                message: format!("duplicate edge ({u}, {v})"),
            });
        }
        edges.push((u, v));
    }
    Ok(edges)
}
