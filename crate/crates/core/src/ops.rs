//! Elementary transformations and metrics: girth, subdivision, disjoint copies, contraction.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Role, VertexId, VertexLabel};

/// Length of a shortest cycle, or `Unbounded` for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GirthValue {
    Finite(usize),
    Unbounded,
}

impl GirthValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            GirthValue::Finite(g) => Some(g),
            GirthValue::Unbounded => None,
        }
    }

    /// `true` when every cycle has at least `bound` vertices.
    pub fn at_least(self, bound: usize) -> bool {
        self.finite().map_or(true, |g| g >= bound)
    }
}

impl fmt::Display for GirthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GirthValue::Finite(g) => write!(f, "{g}"),
            GirthValue::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Shortest cycle length by a breadth-first search from every vertex.
pub fn girth(g: &Graph) -> GirthValue {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        'bfs: while let Some(v) = queue.pop_front() {
            // nothing shorter can be closed from this depth on
            if 2 * dist[v] + 1 >= best {
                break;
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    if best == usize::MAX {
        GirthValue::Unbounded
    } else {
        GirthValue::Finite(best)
    }
}

/// Replaces every edge by a path with `l + 1` edges.
///
/// Original vertices keep their ids and labels; the new vertices are appended
/// edge by edge (edges in lexicographic order) and labelled
/// [`Role::EdgeSubdivision`] with `index` counted from the smaller endpoint.
pub fn subdivide(g: &Graph, l: usize) -> Result<Graph> {
    if l == 0 {
        return Err(Error::InvalidParameter("subdivision length must be at least 1".into()));
    }
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(g.label(v).cloned());
    }
    for (u, v) in g.edges() {
        let copy = match (g.label(u).and_then(|x| x.copy), g.label(v).and_then(|x| x.copy)) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        let mut prev = u;
        for index in 1..=l {
            let role = Role::EdgeSubdivision { a: u, b: v, index };
            let x = b.add_vertex(Some(VertexLabel { copy, role }));
            b.add_edge(prev, x)?;
            prev = x;
        }
        b.add_edge(prev, v)?;
    }
    Ok(b.build())
}

/// `k` vertex-disjoint copies; copy `c` occupies ids `c·n .. (c+1)·n` and its
/// labels carry `copy = c` (unlabelled vertices become [`Role::Plain`]).
pub fn disjoint_copies(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("number of copies must be at least 1".into()));
    }
    let n = g.vertex_count();
    let mut b = GraphBuilder::new();
    for c in 0..k {
        for v in g.vertices() {
            let role = g.label(v).map_or(Role::Plain, |l| l.role.clone());
            b.add_vertex(Some(VertexLabel::in_copy(c, role)));
        }
        for (u, v) in g.edges() {
            b.add_edge(c * n + u, c * n + v)?;
        }
    }
    Ok(b.build())
}

/// Result of [`contract_sets`]: the quotient graph and where each old vertex went.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Graph,
    pub map: Vec<VertexId>,
}

/// Contracts each part to a single vertex.
///
/// New ids follow the smallest old vertex of each class in ascending order.
/// Loops and parallel edges are suppressed. Untouched vertices and singleton
/// parts keep their labels; merged vertices are unlabelled.
pub fn contract_sets(g: &Graph, parts: &[Vec<VertexId>]) -> Result<Contraction> {
    let n = g.vertex_count();
    let mut part_of = vec![usize::MAX; n];
    for (i, part) in parts.iter().enumerate() {
        let set: BTreeSet<VertexId> = part.iter().copied().collect();
        for &v in &set {
            g.check_vertex(v)?;
            if part_of[v] != usize::MAX {
                return Err(Error::OverlappingParts(v));
            }
            part_of[v] = i;
        }
        if !g.is_connected_set(&set) {
            return Err(Error::DisconnectedPart { index: i, vertices: set.into_iter().collect() });
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut part_id = vec![usize::MAX; parts.len()];
    let mut b = GraphBuilder::new();
    for v in 0..n {
        let p = part_of[v];
        if p == usize::MAX {
            map[v] = b.add_vertex(g.label(v).cloned());
        } else {
            if part_id[p] == usize::MAX {
                let label = if parts[p].len() == 1 { g.label(v).cloned() } else { None };
                part_id[p] = b.add_vertex(label);
            }
            map[v] = part_id[p];
        }
    }
    for (u, v) in g.edges() {
        if map[u] != map[v] {
            b.add_edge(map[u], map[v])?;
        }
    }
    Ok(Contraction { graph: b.build(), map })
}
