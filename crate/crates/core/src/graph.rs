//! Simple undirected graphs with dense vertex identifiers and optional role labels.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Vertex identifiers are dense: a graph on `n` vertices uses `0..n`.
pub type VertexId = usize;

/// Structural role of a vertex inside one of the generated families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    Grid { col: usize, row: usize },
    /// `index` runs `1..=ℓ` starting next to the endpoint with the smaller identifier.
    EdgeSubdivision { a: VertexId, b: VertexId, index: usize },
    Apex,
    ApexSubdivision { col: usize, row: usize, index: usize },
    Path { path: usize, position: usize },
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexLabel {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copy: Option<usize>,
    #[serde(flatten)]
    pub role: Role,
}

impl VertexLabel {
    pub fn new(role: Role) -> Self {
        VertexLabel { copy: None, role }
    }

    pub fn in_copy(copy: usize, role: Role) -> Self {
        VertexLabel { copy: Some(copy), role }
    }
}

/// Finite simple undirected graph. Immutable once built; see [`GraphBuilder`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    labels: Vec<Option<VertexLabel>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], labels: vec![None; n], edge_count: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut b = GraphBuilder::with_vertices(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::with_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v).expect("in range");
            }
        }
        b.build()
    }

    /// Cycle on `n ≥ 3` vertices; smaller `n` degrade to a path.
    pub fn cycle(n: usize) -> Self {
        let mut b = GraphBuilder::with_vertices(n);
        for u in 0..n.saturating_sub(1) {
            b.add_edge(u, u + 1).expect("in range");
        }
        if n >= 3 {
            b.add_edge(n - 1, 0).expect("in range");
        }
        b.build()
    }

    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::with_vertices(n);
        for u in 0..n.saturating_sub(1) {
            b.add_edge(u, u + 1).expect("in range");
        }
        b.build()
    }

    /// `rows × cols` grid; vertex `(c, r)` (1-based) has id `(r-1)·cols + (c-1)`.
    pub fn grid(cols: usize, rows: usize) -> Self {
        let mut b = GraphBuilder::new();
        for r in 1..=rows {
            for c in 1..=cols {
                b.add_vertex(Some(VertexLabel::new(Role::Grid { col: c, row: r })));
            }
        }
        let id = |c: usize, r: usize| (r - 1) * cols + (c - 1);
        for r in 1..=rows {
            for c in 1..=cols {
                if c < cols {
                    b.add_edge(id(c, r), id(c + 1, r)).expect("in range");
                }
                if r < rows {
                    b.add_edge(id(c, r), id(c, r + 1)).expect("in range");
                }
            }
        }
        b.build()
    }

    /// Wheel with a rim of `rim` vertices; the hub is the last vertex.
    pub fn wheel(rim: usize) -> Self {
        let mut b = GraphBuilder::with_vertices(rim + 1);
        for u in 0..rim {
            b.add_edge(u, (u + 1) % rim).expect("in range");
            b.add_edge(u, rim).expect("in range");
        }
        b.build()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn label(&self, v: VertexId) -> Option<&VertexLabel> {
        self.labels.get(v).and_then(Option::as_ref)
    }

    pub fn labels(&self) -> &[Option<VertexLabel>] {
        &self.labels
    }

    pub fn has_labels(&self) -> bool {
        self.labels.iter().any(Option::is_some)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count() })
        }
    }

    pub fn without_labels(&self) -> Graph {
        Graph { labels: vec![None; self.vertex_count()], ..self.clone() }
    }

    pub fn with_labels(mut self, labels: Vec<Option<VertexLabel>>) -> Result<Graph> {
        if labels.len() != self.vertex_count() {
            return Err(Error::DomainMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Neighbourhoods as bitsets, for the search cores.
    pub fn neighbor_sets(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        self.adj.iter().map(|ns| VertexSet::from_iter_with_capacity(n, ns.iter().copied())).collect()
    }

    /// Subgraph induced by `keep`, with vertices renumbered in the given order.
    /// Labels follow their vertices.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            self.check_vertex(v)?;
            if index[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!("vertex {v} listed twice")));
            }
            index[v] = i;
        }
        let mut b = GraphBuilder::new();
        for &v in keep {
            b.add_vertex(self.labels[v].clone());
        }
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    b.add_edge(i, j)?;
                }
            }
        }
        Ok(b.build())
    }

    /// Whether `set` is non-empty and induces a connected subgraph.
    pub fn is_connected_set(&self, set: &BTreeSet<VertexId>) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if set.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == set.len()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether any edge joins `a` and `b` (the sets are assumed disjoint).
    pub fn sets_adjacent(&self, a: &BTreeSet<VertexId>, b: &BTreeSet<VertexId>) -> bool {
        a.iter().any(|&u| self.adj[u].iter().any(|w| b.contains(w)))
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1 && self.edge_count + 1 == self.vertex_count() && self.is_connected()
    }
}

/// Single-threaded mutable builder for [`Graph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    adj: Vec<BTreeSet<VertexId>>,
    labels: Vec<Option<VertexLabel>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        GraphBuilder { adj: vec![BTreeSet::new(); n], labels: vec![None; n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self, label: Option<VertexLabel>) -> VertexId {
        self.adj.push(BTreeSet::new());
        self.labels.push(label);
        self.adj.len() - 1
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        let n = self.adj.len();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, count: n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(fresh)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn set_label(&mut self, v: VertexId, label: Option<VertexLabel>) {
        self.labels[v] = label;
    }

    pub fn build(self) -> Graph {
        let edge_count = self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2;
        Graph {
            adj: self.adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            labels: self.labels,
            edge_count,
        }
    }
}

impl From<&Graph> for GraphBuilder {
    fn from(g: &Graph) -> Self {
        GraphBuilder {
            adj: g.adj.iter().map(|ns| ns.iter().copied().collect()).collect(),
            labels: g.labels.clone(),
        }
    }
}
