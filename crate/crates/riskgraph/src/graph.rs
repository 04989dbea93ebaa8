//! Finite simple undirected graphs with label-based construction.
//!
//! Vertices get dense ids `0..n` in declaration order; the string label is
//! the external identity and never appears inside the algorithms. A [`Graph`]
//! is immutable once built, so analyses can share it freely across threads.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

/// Dense vertex index, valid for exactly one host graph.
pub type VertexId = usize;

/// Rejections raised while building a graph or resolving a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("self-loop on `{0}` is not allowed in a simple graph")]
    SelfLoop(String),
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("vertex id {0} is out of range")]
    InvalidVertex(VertexId),
}

/// A finite simple undirected graph.
///
/// Invariants held by construction: no self-loops, no duplicate edges, and
/// symmetric adjacency (`u ∈ N(v)` iff `v ∈ N(u)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    ids: HashMap<String, VertexId>,
    adj: Vec<BTreeSet<VertexId>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from vertex labels and label pairs.
    ///
    /// Ids are assigned in label order, so the input order fixes every
    /// tie-break downstream. Duplicate labels, undeclared endpoints,
    /// self-loops and duplicate edges are rejected with the offending
    /// item named.
    pub fn build<S: AsRef<str>>(labels: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let mut ids = HashMap::with_capacity(labels.len());
        let mut owned = Vec::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            let label = label.as_ref().to_owned();
            if ids.insert(label.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(label));
            }
            owned.push(label);
        }
        let mut graph = Graph {
            adj: vec![BTreeSet::new(); owned.len()],
            labels: owned,
            ids,
            edge_count: 0,
        };
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = graph
                .id_of(a)
                .ok_or_else(|| GraphError::UnknownEndpoint(a.to_owned()))?;
            let v = graph
                .id_of(b)
                .ok_or_else(|| GraphError::UnknownEndpoint(b.to_owned()))?;
            if u == v {
                return Err(GraphError::SelfLoop(a.to_owned()));
            }
            if graph.adj[u].contains(&v) {
                return Err(GraphError::DuplicateEdge(a.to_owned(), b.to_owned()));
            }
            graph.adj[u].insert(v);
            graph.adj[v].insert(u);
            graph.edge_count += 1;
        }
        Ok(graph)
    }

    /// Builds a graph on `n` vertices labelled `v0..v{n-1}` from id pairs.
    /// Convenience for tests and generators.
    pub fn from_id_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> = edges
            .iter()
            .map(|&(u, v)| {
                (
                    labels.get(u).cloned().unwrap_or_else(|| format!("v{u}")),
                    labels.get(v).cloned().unwrap_or_else(|| format!("v{v}")),
                )
            })
            .collect();
        Self::build(&labels, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.labels.len()
    }

    /// Label of vertex `v`. Panics if `v` is out of range.
    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn id_of(&self, label: &str) -> Option<VertexId> {
        self.ids.get(label).copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.labels.len()
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    /// Neighbor set `N(v)`, ascending by id.
    pub fn neighbors(&self, v: VertexId) -> Result<&BTreeSet<VertexId>, GraphError> {
        self.check(v)?;
        Ok(&self.adj[v])
    }

    /// Degree `d(v) = |N(v)|`.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.adj[v].len())
    }

    /// Unchecked neighbor access for internal algorithm loops.
    pub(crate) fn adj(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.contains(u) && self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u].iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(|s| s.len()).min()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        n >= 1 && self.edge_count == n * (n - 1) / 2
    }

    /// Connected components as blocks of vertex ids.
    ///
    /// Blocks are sorted internally and ordered by their smallest member,
    /// so the partition is deterministic.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut block = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                block.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// Number of connected components `c(G)`.
    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    /// `true` iff `c(G) = 1`.
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Checks that `p` is a path in this graph: consecutive vertices are
    /// adjacent and no vertex repeats. The empty sequence is not a path.
    pub fn validate_path(&self, p: &Path) -> bool {
        let vs = p.vertices();
        if vs.is_empty() || vs.iter().any(|&v| !self.contains(v)) {
            return false;
        }
        let mut seen = BTreeSet::new();
        for &v in vs {
            if !seen.insert(v) {
                return false;
            }
        }
        vs.windows(2).all(|w| self.adj[w[0]].contains(&w[1]))
    }
}

/// An ordered vertex sequence; validity against a host graph is checked by
/// [`Graph::validate_path`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<VertexId>,
}

impl Path {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        Path { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        Some((*self.vertices.first()?, *self.vertices.last()?))
    }
}
