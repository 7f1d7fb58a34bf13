//! Simple undirected graphs with stable edge indices.
//!
//! Edge `i` always refers to the `i`-th pair handed to [`Graph::new`]; every
//! binomial in this crate uses edge indices as variable indices.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{Result, ToricError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<BTreeMap<usize, String>>,
    adjacency: Vec<Vec<(usize, usize)>>,
    lookup: HashMap<(usize, usize), usize>,
}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut lookup = HashMap::with_capacity(edges.len());
        for (idx, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(ToricError::InvalidGraph(format!(
                    "edge {idx} = ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(ToricError::InvalidGraph(format!("edge {idx} is a loop at {u}")));
            }
            let key = (u.min(v), u.max(v));
            if let Some(prev) = lookup.insert(key, idx) {
                return Err(ToricError::InvalidGraph(format!(
                    "edges {prev} and {idx} are parallel ({u}, {v})"
                )));
            }
            adjacency[u].push((v, idx));
            adjacency[v].push((u, idx));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { vertex_count, edges, labels: None, adjacency, lookup })
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> (usize, usize) {
        self.edges[idx]
    }

    pub fn labels(&self) -> Option<&BTreeMap<usize, String>> {
        self.labels.as_ref()
    }

    pub fn label(&self, v: usize) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get(&v).cloned())
            .unwrap_or_else(|| v.to_string())
    }

    /// Neighbors of `v` as `(neighbor, edge index)`, sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.lookup.get(&(u.min(v), u.max(v))).copied()
    }

    /// The endpoint of edge `e` opposite to `v`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn full_edge_set(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.edge_count());
        set.insert_range(..);
        set
    }

    pub fn edge_set(&self, edges: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.edge_count());
        for e in edges {
            set.insert(e);
        }
        set
    }

    /// Vertices touched by the edges in `subset`.
    pub fn vertices_of(&self, subset: &FixedBitSet) -> FixedBitSet {
        let mut verts = FixedBitSet::with_capacity(self.vertex_count);
        for e in subset.ones() {
            let (u, v) = self.edges[e];
            verts.insert(u);
            verts.insert(v);
        }
        verts
    }

    /// Connectivity of the subgraph spanned by `subset` (on the vertices it touches).
    pub fn is_connected_subset(&self, subset: &FixedBitSet) -> bool {
        let verts = self.vertices_of(subset);
        let Some(start) = verts.ones().next() else {
            return true;
        };
        let mut seen = FixedBitSet::with_capacity(self.vertex_count);
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &self.adjacency[v] {
                if subset.contains(e) && !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen.count_ones(..) == verts.count_ones(..)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        if self.adjacency.iter().any(|a| a.is_empty()) {
            return false;
        }
        self.is_connected_subset(&self.full_edge_set())
    }

    /// Two-coloring, if one exists. Isolated vertices get color 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.vertex_count];
        for root in 0..self.vertex_count {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adjacency[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Column-per-edge vertex incidence matrix (`a_e = v_i + v_j`).
    pub fn incidence_matrix(&self) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![0i64; self.edge_count()]; self.vertex_count];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            rows[u][e] = 1;
            rows[v][e] = 1;
        }
        rows
    }

    /// Parses the edge-list text format: `n m`, then `m` lines `u v`; `#` lines are comments.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(ToricError::Parse {
            line: 0,
            msg: "missing header line".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, text) in lines {
            edges.push(parse_pair(line, text)?);
        }
        if edges.len() != m {
            return Err(ToricError::Parse {
                line: hline,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.vertex_count, self.edge_count()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut parts = text.split_whitespace();
    let mut next = || -> Result<usize> {
        parts
            .next()
            .ok_or_else(|| ToricError::Parse { line, msg: "expected two integers".into() })?
            .parse::<usize>()
            .map_err(|e| ToricError::Parse { line, msg: e.to_string() })
    };
    let a = next()?;
    let b = next()?;
    if parts.next().is_some() {
        return Err(ToricError::Parse { line, msg: "trailing tokens".into() });
    }
    Ok((a, b))
}
