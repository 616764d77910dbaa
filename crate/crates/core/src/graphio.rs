//! Edge-list ingestion and the simple directed graph every later stage works on.
//!
//! Files hold one edge per line, `<src> <dst>` or `<src> <dst> <weight>`, with
//! fields separated by spaces or tabs. Lines starting with `#` or `%` and
//! blank lines are skipped. Weights are read and discarded.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// An edge as it appeared in the input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawEdge {
    pub source: u64,
    pub target: u64,
    /// 1-based line number in the source text.
    pub line: usize,
}

/// Edges in file order, labels untouched.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawEdgeList {
    pub edges: Vec<RawEdge>,
}

impl RawEdgeList {
    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let edges = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (source, target))| RawEdge {
                source,
                target,
                line: i + 1,
            })
            .collect();
        RawEdgeList { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// What `normalize` removed and how labels were remapped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NormalizationReport {
    pub self_loops_removed: usize,
    pub duplicates_removed: usize,
    /// `label_map[dense_id]` is the original label of that node.
    pub labels: Vec<u64>,
}

impl NormalizationReport {
    pub fn original_label(&self, node: u32) -> u64 {
        self.labels[node as usize]
    }

    pub fn label_map(&self) -> HashMap<u64, u32> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32))
            .collect()
    }
}

/// A simple directed graph on nodes `0..n`: no self-loops, no parallel edges.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    node_count: usize,
    edges: Vec<(u32, u32)>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.node_count == other.node_count && self.out_adj == other.out_adj
    }
}

impl Eq for DirectedGraph {}

impl DirectedGraph {
    /// Builds a graph from an edge list that already satisfies the simple-graph
    /// invariants. Edge order is kept as given.
    pub fn from_edges(node_count: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        let mut out_adj = vec![Vec::new(); node_count];
        let mut in_adj = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            if u as usize >= node_count || v as usize >= node_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {node_count} nodes"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on node {u}")));
            }
            out_adj[u as usize].push(v);
            in_adj[v as usize].push(u);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph("duplicate edge".into()));
            }
        }
        Ok(DirectedGraph {
            node_count,
            edges,
            out_adj,
            in_adj,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn out_neighbors(&self, u: u32) -> &[u32] {
        &self.out_adj[u as usize]
    }

    pub fn in_neighbors(&self, u: u32) -> &[u32] {
        &self.in_adj[u as usize]
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.out_adj[u as usize].binary_search(&v).is_ok()
    }

    /// Edges sorted by (source, target), independent of construction order.
    pub fn sorted_edges(&self) -> Vec<(u32, u32)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Neighbors ignoring direction, sorted and deduplicated.
    pub fn undirected_neighbors(&self) -> Vec<Vec<u32>> {
        (0..self.node_count)
            .map(|u| {
                let mut nb: Vec<u32> = self.out_adj[u]
                    .iter()
                    .chain(self.in_adj[u].iter())
                    .copied()
                    .collect();
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect()
    }

    pub fn to_raw(&self) -> RawEdgeList {
        RawEdgeList::from_pairs(self.edges.iter().map(|&(u, v)| (u as u64, v as u64)))
    }
}

/// Per-node degrees plus the number of reciprocated node pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequences {
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
    pub mutual_edge_count: usize,
}

fn parse_label(token: &str, line: usize) -> Result<u64> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            line,
            message: format!("expected a non-negative integer, found {token:?}"),
        });
    }
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("integer {token:?} out of range"),
    })
}

pub fn parse_edge_list(text: &str) -> Result<RawEdgeList> {
    let mut edges = Vec::new();
    for (idx, line) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        let trimmed = line.trim_start_matches([' ', '\t']);
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed
            .split([' ', '\t'])
            .filter(|f| !f.is_empty())
            .collect();
        match fields.len() {
            0 => continue,
            1 => {
                return Err(Error::Parse {
                    line: line_no,
                    message: "expected at least 2 fields".into(),
                })
            }
            2 | 3 => {}
            n => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected at most 3 fields, found {n}"),
                })
            }
        }
        let source = parse_label(fields[0], line_no)?;
        let target = parse_label(fields[1], line_no)?;
        edges.push(RawEdge {
            source,
            target,
            line: line_no,
        });
    }
    Ok(RawEdgeList { edges })
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<RawEdgeList> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text)
}

/// Drops self-loops and repeated edges and relabels nodes densely in order of
/// first appearance.
pub fn normalize(raw: &RawEdgeList) -> Result<(DirectedGraph, NormalizationReport)> {
    let mut report = NormalizationReport::default();
    let mut dense: HashMap<u64, u32> = HashMap::new();
    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(raw.len());
    let mut edges = Vec::with_capacity(raw.len());

    for e in &raw.edges {
        if e.source == e.target {
            report.self_loops_removed += 1;
            continue;
        }
        let mut id = |label: u64| {
            *dense.entry(label).or_insert_with(|| {
                report.labels.push(label);
                (report.labels.len() - 1) as u32
            })
        };
        let u = id(e.source);
        let v = id(e.target);
        if seen.insert((u, v)) {
            edges.push((u, v));
        } else {
            report.duplicates_removed += 1;
        }
    }
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let graph = DirectedGraph::from_edges(report.labels.len(), edges)?;
    Ok((graph, report))
}

pub fn degree_sequences(g: &DirectedGraph) -> DegreeSequences {
    let n = g.node_count();
    let out_degrees = (0..n as u32).map(|u| g.out_neighbors(u).len()).collect();
    let in_degrees = (0..n as u32).map(|u| g.in_neighbors(u).len()).collect();
    let mutual_edge_count = g
        .edges()
        .iter()
        .filter(|&&(u, v)| u < v && g.has_edge(v, u))
        .count();
    DegreeSequences {
        out_degrees,
        in_degrees,
        mutual_edge_count,
    }
}
