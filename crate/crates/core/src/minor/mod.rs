//! Minor and induced-minor models: verification, exact search, and a naive oracle.

mod brute;
mod reduce;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub use brute::{brute_force_contains, BRUTE_FORCE_GUARD};
pub use search::{find_model, find_model_with, find_models, SearchConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Ordinary,
    Induced,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Ordinary => "ordinary",
            ModelKind::Induced => "induced",
        })
    }
}

/// Branch sets of a model: pattern vertex → host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub kind: ModelKind,
    pub assignment: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl MinorModel {
    pub fn new(kind: ModelKind) -> Self {
        MinorModel { kind, assignment: BTreeMap::new() }
    }

    pub fn from_sets<I, S>(kind: ModelKind, sets: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = VertexId>,
    {
        MinorModel {
            kind,
            assignment: sets.into_iter().enumerate().map(|(u, s)| (u, s.into_iter().collect())).collect(),
        }
    }

    /// Singleton model of a graph in itself.
    pub fn identity(g: &Graph, kind: ModelKind) -> Self {
        Self::from_sets(kind, g.vertices().map(|v| [v]))
    }

    pub fn branch_set(&self, u: VertexId) -> Option<&BTreeSet<VertexId>> {
        self.assignment.get(&u)
    }

    /// Host vertex → pattern vertex owning it.
    pub fn owner_map(&self) -> BTreeMap<VertexId, VertexId> {
        self.assignment.iter().flat_map(|(&u, s)| s.iter().map(move |&x| (x, u))).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// First violated model constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum Violation {
    EmptyBranchSet { vertex: VertexId },
    Disjointness { a: VertexId, b: VertexId, host_vertex: VertexId },
    Connectivity { vertex: VertexId },
    EdgeAdjacency { a: VertexId, b: VertexId },
    NonEdgeAdjacency { a: VertexId, b: VertexId },
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::EmptyBranchSet { .. } => "non-empty",
            Violation::Disjointness { .. } => "disjointness",
            Violation::Connectivity { .. } => "connectivity",
            Violation::EdgeAdjacency { .. } => "edge adjacency",
            Violation::NonEdgeAdjacency { .. } => "non-edge adjacency",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyBranchSet { vertex } => write!(f, "non-empty: branch set of {vertex} is empty"),
            Violation::Disjointness { a, b, host_vertex } => {
                write!(f, "disjointness: branch sets of {a} and {b} share host vertex {host_vertex}")
            }
            Violation::Connectivity { vertex } => write!(f, "connectivity: branch set of {vertex} is disconnected"),
            Violation::EdgeAdjacency { a, b } => write!(f, "edge adjacency: branch sets of {a} and {b} are not adjacent"),
            Violation::NonEdgeAdjacency { a, b } => {
                write!(f, "non-edge adjacency: branch sets of non-adjacent {a} and {b} touch")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

impl ModelReport {
    fn from(violation: Option<Violation>) -> Self {
        ModelReport { valid: violation.is_none(), violation }
    }
}

/// Checks disjointness, connectivity, edge adjacency and (for induced
/// models) non-adjacency of non-edges, in that order.
///
/// The assignment must cover exactly the pattern's vertices and only name
/// host vertices; anything else is an error rather than a violation.
pub fn verify_model(pattern: &Graph, host: &Graph, m: &MinorModel) -> Result<ModelReport> {
    let domain: Vec<VertexId> = m.assignment.keys().copied().collect();
    if domain != pattern.vertices().collect::<Vec<_>>() {
        return Err(Error::DomainMismatch(format!(
            "assignment covers {domain:?}, pattern has {} vertices",
            pattern.vertex_count()
        )));
    }
    for set in m.assignment.values() {
        for &x in set {
            host.check_vertex(x)?;
        }
    }
    Ok(ModelReport::from(first_violation(pattern, host, m)))
}

fn first_violation(pattern: &Graph, host: &Graph, m: &MinorModel) -> Option<Violation> {
    if let Some((&u, _)) = m.assignment.iter().find(|(_, s)| s.is_empty()) {
        return Some(Violation::EmptyBranchSet { vertex: u });
    }
    let mut owner = vec![usize::MAX; host.vertex_count()];
    for (&u, set) in &m.assignment {
        for &x in set {
            if owner[x] != usize::MAX {
                return Some(Violation::Disjointness { a: owner[x], b: u, host_vertex: x });
            }
            owner[x] = u;
        }
    }
    if let Some((&u, _)) = m.assignment.iter().find(|(_, s)| !host.is_connected_set(s)) {
        return Some(Violation::Connectivity { vertex: u });
    }
    let mut touching: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for (x, y) in host.edges() {
        let (a, b) = (owner[x], owner[y]);
        if a != usize::MAX && b != usize::MAX && a != b {
            touching.insert((a.min(b), a.max(b)));
        }
    }
    if let Some((a, b)) = pattern.edges().find(|e| !touching.contains(e)) {
        return Some(Violation::EdgeAdjacency { a, b });
    }
    if m.kind == ModelKind::Induced {
        if let Some(&(a, b)) = touching.iter().find(|&&(a, b)| !pattern.has_edge(a, b)) {
            return Some(Violation::NonEdgeAdjacency { a, b });
        }
    }
    None
}

/// Result of a budgeted exact search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome<T> {
    Found { witness: T },
    /// Exhaustive search completed without a witness.
    Absent,
    /// The node budget ran out first.
    Unknown { spent: u64 },
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, SearchOutcome::Absent)
    }

    pub fn witness(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found { .. } => "Found",
            SearchOutcome::Absent => "Absent",
            SearchOutcome::Unknown { .. } => "Unknown",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_model_verifies() {
        let g = Graph::cycle(5);
        for kind in [ModelKind::Ordinary, ModelKind::Induced] {
            assert!(verify_model(&g, &g, &MinorModel::identity(&g, kind)).unwrap().valid);
        }
    }

    #[test]
    fn shared_vertex_is_disjointness() {
        let p = Graph::complete(2);
        let h = Graph::path(3);
        let m = MinorModel::from_sets(ModelKind::Ordinary, [vec![0, 1], vec![1, 2]]);
        let r = verify_model(&p, &h, &m).unwrap();
        assert_eq!(r.violation.unwrap().name(), "disjointness");
    }

    #[test]
    fn induced_c4_in_k4_is_non_edge_adjacency() {
        let m = MinorModel::identity(&Graph::complete(4), ModelKind::Induced);
        let r = verify_model(&Graph::cycle(4), &Graph::complete(4), &m).unwrap();
        assert_eq!(r.violation.unwrap().name(), "non-edge adjacency");
        // the same sets are fine as an ordinary model
        let m = MinorModel::identity(&Graph::complete(4), ModelKind::Ordinary);
        assert!(verify_model(&Graph::cycle(4), &Graph::complete(4), &m).unwrap().valid);
    }

    #[test]
    fn connectivity_and_adjacency_violations() {
        let h = Graph::path(4);
        let m = MinorModel::from_sets(ModelKind::Ordinary, [vec![0, 2], vec![1]]);
        assert_eq!(verify_model(&Graph::complete(2), &h, &m).unwrap().violation.unwrap().name(), "connectivity");
        let m = MinorModel::from_sets(ModelKind::Ordinary, [vec![0], vec![2]]);
        assert_eq!(verify_model(&Graph::complete(2), &h, &m).unwrap().violation.unwrap().name(), "edge adjacency");
        let m = MinorModel::from_sets(ModelKind::Ordinary, [vec![0], Vec::new()]);
        assert_eq!(verify_model(&Graph::complete(2), &h, &m).unwrap().violation.unwrap().name(), "non-empty");
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let m = MinorModel::from_sets(ModelKind::Ordinary, [vec![0]]);
        assert!(matches!(verify_model(&Graph::complete(2), &Graph::path(2), &m), Err(Error::DomainMismatch(_))));
        let m = MinorModel::from_sets(ModelKind::Ordinary, [vec![0], vec![9]]);
        assert!(verify_model(&Graph::complete(2), &Graph::path(2), &m).is_err());
    }

    #[test]
    fn model_json_shape() {
        let m = MinorModel::from_sets(ModelKind::Induced, [vec![3, 1], vec![2]]);
        let s = m.to_json();
        assert_eq!(s, r#"{"kind":"induced","assignment":{"0":[1,3],"1":[2]}}"#);
        assert_eq!(MinorModel::from_json(&s).unwrap(), m);
    }
}
