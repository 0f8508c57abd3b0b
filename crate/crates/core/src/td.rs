//! Tree decompositions: validation, torsos, clique-sums and the Helly
//! property for subtrees.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::graph_serde;
use crate::graph::{Graph, GraphBuilder, VertexId};

/// Bags indexed by the nodes of `tree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    #[serde(with = "graph_serde")]
    pub tree: Graph,
    pub bags: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl TreeDecomposition {
    pub fn new<I, B>(tree: Graph, bags: I) -> Self
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = VertexId>,
    {
        TreeDecomposition { tree, bags: bags.into_iter().enumerate().map(|(x, b)| (x, b.into_iter().collect())).collect() }
    }

    /// One bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        Self::new(Graph::empty(1), [g.vertices()])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn check_shape(&self, g: &Graph) -> Result<()> {
        if !self.tree.is_tree() {
            return Err(Error::NotATree(format!(
                "{} nodes, {} edges",
                self.tree.vertex_count(),
                self.tree.edge_count()
            )));
        }
        if self.bags.len() != self.tree.vertex_count() || self.bags.keys().zip(self.tree.vertices()).any(|(&a, b)| a != b) {
            return Err(Error::DomainMismatch("bags must be indexed by exactly the tree nodes".into()));
        }
        for bag in self.bags.values() {
            for &v in bag {
                g.check_vertex(v)?;
            }
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.bags.values().map(BTreeSet::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// Largest intersection of adjacent bags (0 for a single bag).
    pub fn adhesion(&self) -> usize {
        self.tree.edges().map(|(x, y)| self.bags[&x].intersection(&self.bags[&y]).count()).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdReport {
    pub valid: bool,
    pub violation: Option<String>,
    pub width: Option<usize>,
    pub adhesion: Option<usize>,
}

/// Checks that every vertex lies in a non-empty connected set of bags and
/// every edge lies in some bag.
pub fn verify_td(g: &Graph, td: &TreeDecomposition) -> Result<TdReport> {
    td.check_shape(g)?;
    let violation = first_violation(g, td);
    let valid = violation.is_none();
    Ok(TdReport {
        valid,
        violation,
        width: valid.then(|| td.width()),
        adhesion: valid.then(|| td.adhesion()),
    })
}

fn first_violation(g: &Graph, td: &TreeDecomposition) -> Option<String> {
    for v in g.vertices() {
        let nodes: BTreeSet<VertexId> = td.bags.iter().filter(|(_, b)| b.contains(&v)).map(|(&x, _)| x).collect();
        if nodes.is_empty() {
            return Some(format!("uncovered vertex {v}"));
        }
        if !td.tree.is_connected_set(&nodes) {
            return Some(format!("bags containing vertex {v} are not connected in the tree"));
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.values().any(|b| b.contains(&u) && b.contains(&v)) {
            return Some(format!("uncovered edge {u}-{v}"));
        }
    }
    None
}

/// A torso with its vertices renumbered; `vertices[i]` is the original id of `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Torso {
    pub graph: Graph,
    pub vertices: Vec<VertexId>,
}

/// The bag's induced subgraph with every intersection with a neighbouring
/// bag made a clique.
pub fn torso(g: &Graph, td: &TreeDecomposition, node: VertexId) -> Result<Torso> {
    let report = verify_td(g, td)?;
    let bag = td.bags.get(&node).ok_or(Error::UnknownNode(node))?;
    if let Some(v) = report.violation {
        return Err(Error::Precondition(format!("invalid tree decomposition: {v}")));
    }
    let vertices: Vec<VertexId> = bag.iter().copied().collect();
    let index: BTreeMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut b = GraphBuilder::from(&g.induced_subgraph(&vertices)?.without_labels());
    for &y in td.tree.neighbors(node) {
        let shared: Vec<usize> = bag.intersection(&td.bags[&y]).map(|v| index[v]).collect();
        for (i, &a) in shared.iter().enumerate() {
            for &c in &shared[i + 1..] {
                b.add_edge(a, c)?;
            }
        }
    }
    Ok(Torso { graph: b.build(), vertices })
}

/// Result of gluing: vertices of the first graph keep their ids; `second[v]`
/// is the new id of vertex `v` of the second graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSum {
    pub graph: Graph,
    pub second: Vec<VertexId>,
}

/// Identifies `c1[i]` with `c2[i]` and deletes the listed pairs of `c1`.
pub fn clique_sum(
    g1: &Graph,
    c1: &[VertexId],
    g2: &Graph,
    c2: &[VertexId],
    drop_edges: &[(VertexId, VertexId)],
) -> Result<CliqueSum> {
    if c1.len() != c2.len() {
        return Err(Error::InvalidParameter(format!("clique sizes differ: {} vs {}", c1.len(), c2.len())));
    }
    for (g, c, name) in [(g1, c1, "first"), (g2, c2, "second")] {
        for &v in c {
            g.check_vertex(v)?;
        }
        if c.iter().collect::<BTreeSet<_>>().len() != c.len() {
            return Err(Error::InvalidParameter(format!("{name} clique repeats a vertex")));
        }
        for (i, &a) in c.iter().enumerate() {
            if let Some(&b) = c[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return Err(Error::NotAClique(format!("{name} graph has no edge {a}-{b}")));
            }
        }
    }
    for &(a, b) in drop_edges {
        if a == b || !c1.contains(&a) || !c1.contains(&b) {
            return Err(Error::InvalidParameter(format!("dropped pair {a}-{b} is not a pair of the clique")));
        }
    }
    let n1 = g1.vertex_count();
    let mut second = vec![usize::MAX; g2.vertex_count()];
    for (i, &w) in c2.iter().enumerate() {
        second[w] = c1[i];
    }
    let mut next = n1;
    for slot in second.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut b = GraphBuilder::with_vertices(next);
    for (u, v) in g1.edges() {
        b.add_edge(u, v)?;
    }
    for (u, v) in g2.edges() {
        b.add_edge(second[u], second[v])?;
    }
    let dropped: BTreeSet<(VertexId, VertexId)> = drop_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let edges: Vec<(VertexId, VertexId)> = b.build().edges().filter(|e| !dropped.contains(e)).collect();
    Ok(CliqueSum { graph: Graph::from_edges(next, &edges)?, second })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum HellyOutcome {
    /// Smallest node lying in every subtree.
    Common { node: VertexId },
    /// Indices of two disjoint subtrees (first such pair).
    Disjoint { first: usize, second: usize },
}

/// Pairwise-intersecting subtrees of a tree share a node; returns the
/// smallest one, or a disjoint pair.
pub fn helly_common_node(tree: &Graph, subtrees: &[BTreeSet<VertexId>]) -> Result<HellyOutcome> {
    if !tree.is_tree() {
        return Err(Error::NotATree(format!("{} nodes, {} edges", tree.vertex_count(), tree.edge_count())));
    }
    for (index, s) in subtrees.iter().enumerate() {
        for &x in s {
            tree.check_vertex(x)?;
        }
        if s.is_empty() || !tree.is_connected_set(s) {
            return Err(Error::DisconnectedPart { index, vertices: s.iter().copied().collect() });
        }
    }
    for i in 0..subtrees.len() {
        for j in i + 1..subtrees.len() {
            if subtrees[i].is_disjoint(&subtrees[j]) {
                return Ok(HellyOutcome::Disjoint { first: i, second: j });
            }
        }
    }
    let node = tree
        .vertices()
        .find(|x| subtrees.iter().all(|s| s.contains(x)))
        .ok_or_else(|| Error::Internal("pairwise intersecting subtrees without a common node".into()))?;
    Ok(HellyOutcome::Common { node })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_examples() {
        let g = Graph::path(4);
        let one = verify_td(&g, &TreeDecomposition::trivial(&g)).unwrap();
        assert_eq!((one.valid, one.width, one.adhesion), (true, Some(3), Some(0)));
        let td = TreeDecomposition::new(Graph::path(3), [vec![0, 1], vec![1, 2], vec![2, 3]]);
        let r = verify_td(&g, &td).unwrap();
        assert_eq!((r.valid, r.width, r.adhesion), (true, Some(1), Some(1)));
        let td = TreeDecomposition::new(Graph::path(2), [vec![0, 1], vec![2, 3]]);
        let r = verify_td(&g, &td).unwrap();
        assert!(!r.valid);
        assert_eq!(r.violation.as_deref(), Some("uncovered edge 1-2"));
        let td = TreeDecomposition::new(Graph::path(3), [vec![0, 1], vec![2, 3], vec![1, 2]]);
        assert!(verify_td(&g, &td).unwrap().violation.unwrap().contains("vertex 1"));
        let not_tree = TreeDecomposition::new(Graph::cycle(3), [vec![0], vec![1], vec![2]]);
        assert!(matches!(verify_td(&g, &not_tree), Err(Error::NotATree(_))));
    }

    #[test]
    fn torso_examples() {
        let c4 = Graph::cycle(4);
        let td = TreeDecomposition::new(Graph::path(2), [vec![0, 1, 3], vec![1, 2, 3]]);
        for node in 0..2 {
            let t = torso(&c4, &td, node).unwrap();
            assert_eq!(t.graph, Graph::complete(3));
        }
        assert!(matches!(torso(&c4, &td, 5), Err(Error::UnknownNode(5))));
        // star with centre 0; adhesion sets are {0}
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let td = TreeDecomposition::new(Graph::path(3), [vec![0, 1], vec![0, 2], vec![0, 3]]);
        let t = torso(&star, &td, 1).unwrap();
        assert_eq!(t.vertices, vec![0, 2]);
        assert_eq!(t.graph, Graph::path(2));
    }

    #[test]
    fn clique_sum_examples() {
        let tri = Graph::complete(3);
        let diamond = clique_sum(&tri, &[0, 1], &tri, &[0, 1], &[]).unwrap();
        assert_eq!((diamond.graph.vertex_count(), diamond.graph.edge_count()), (4, 5));
        let c4 = clique_sum(&tri, &[0, 1], &tri, &[0, 1], &[(0, 1)]).unwrap();
        assert!(crate::iso::are_isomorphic(&c4.graph, &Graph::cycle(4), false).unwrap());
        let p3 = clique_sum(&Graph::complete(2), &[1], &Graph::complete(2), &[0], &[]).unwrap();
        assert_eq!(p3.graph, Graph::path(3));
        assert_eq!(p3.second, vec![1, 2]);
        assert!(matches!(clique_sum(&Graph::path(3), &[0, 2], &tri, &[0, 1], &[]), Err(Error::NotAClique(_))));
        assert!(clique_sum(&tri, &[0, 0], &tri, &[0, 1], &[]).is_err());
        assert!(clique_sum(&tri, &[0, 1], &tri, &[0, 1], &[(0, 2)]).is_err());
    }

    #[test]
    fn helly_examples() {
        let p5 = Graph::path(5);
        let s = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(
            helly_common_node(&p5, &[s(&[0, 1, 2]), s(&[1, 2, 3]), s(&[2, 3, 4])]).unwrap(),
            HellyOutcome::Common { node: 2 }
        );
        assert_eq!(helly_common_node(&p5, &[s(&[0]), s(&[4])]).unwrap(), HellyOutcome::Disjoint { first: 0, second: 1 });
        assert_eq!(helly_common_node(&p5, &[s(&[3, 4])]).unwrap(), HellyOutcome::Common { node: 3 });
        assert!(matches!(helly_common_node(&p5, &[s(&[0, 2])]), Err(Error::DisconnectedPart { index: 0, .. })));
    }

    #[test]
    fn torso_contains_the_bag() {
        let g = Graph::wheel(5);
        let td = TreeDecomposition::new(Graph::path(3), [vec![5, 0, 1, 2], vec![5, 0, 2, 3], vec![5, 0, 3, 4]]);
        assert!(verify_td(&g, &td).unwrap().valid);
        for node in 0..3 {
            let t = torso(&g, &td, node).unwrap();
            let induced = g.induced_subgraph(&t.vertices).unwrap();
            assert!(induced.edges().all(|(u, v)| t.graph.has_edge(u, v)));
        }
    }

    #[test]
    fn json_round_trip() {
        let td = TreeDecomposition::new(Graph::path(2), [vec![0, 1], vec![1, 2]]);
        let text = td.to_json();
        assert!(text.starts_with(r#"{"tree":"#));
        assert_eq!(TreeDecomposition::from_json(&text).unwrap(), td);
    }
}
