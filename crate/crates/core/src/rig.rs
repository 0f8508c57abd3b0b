//! Region intersection graph representations: realisation, verification,
//! exhaustive search, and extraction of a minor model from an induced model
//! of a 1-subdivision.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::graph_serde;
use crate::graph::{Graph, GraphBuilder, VertexId};
use crate::minor::{verify_model, MinorModel, ModelKind, SearchOutcome};
use crate::ops::subdivide;

/// Regions (connected host vertex sets) for the vertices `0..n` of the
/// represented graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigRepresentation {
    #[serde(with = "graph_serde")]
    pub host: Graph,
    pub regions: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl RigRepresentation {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("representation serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn check(&self) -> Result<()> {
        for (i, &v) in self.regions.keys().enumerate() {
            if i != v {
                return Err(Error::DomainMismatch(format!("represented vertices must be 0..n, found {v} at position {i}")));
            }
        }
        for (&v, r) in &self.regions {
            for &x in r {
                self.host.check_vertex(x)?;
            }
            if r.is_empty() || !self.host.is_connected_set(r) {
                return Err(Error::DisconnectedRegion(v));
            }
        }
        Ok(())
    }
}

/// The intersection graph of the regions.
pub fn realize(rep: &RigRepresentation) -> Result<Graph> {
    rep.check()?;
    let regions: Vec<&BTreeSet<VertexId>> = rep.regions.values().collect();
    let mut b = GraphBuilder::with_vertices(regions.len());
    for u in 0..regions.len() {
        for v in u + 1..regions.len() {
            if !regions[u].is_disjoint(regions[v]) {
                b.add_edge(u, v)?;
            }
        }
    }
    Ok(b.build())
}

/// `g` over its 1-subdivision: each vertex's region is itself plus the
/// subdivision vertices of its incident edges.
pub fn canonical_subdivision_rep(g: &Graph) -> RigRepresentation {
    let host = subdivide(g, 1).expect("l = 1 is valid");
    let n = g.vertex_count();
    let mut regions: BTreeMap<VertexId, BTreeSet<VertexId>> = g.vertices().map(|v| (v, BTreeSet::from([v]))).collect();
    for (e, (u, v)) in g.edges().enumerate() {
        regions.get_mut(&u).unwrap().insert(n + e);
        regions.get_mut(&v).unwrap().insert(n + e);
    }
    RigRepresentation { host, regions }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationReport {
    pub valid: bool,
    /// Edges of `g` whose regions are disjoint.
    pub missing_edges: Vec<[VertexId; 2]>,
    /// Intersecting regions of non-adjacent vertices.
    pub extra_edges: Vec<[VertexId; 2]>,
}

impl RepresentationReport {
    pub fn summary(&self) -> String {
        if let Some([u, v]) = self.extra_edges.first() {
            format!("extra edge {u}-{v}")
        } else if let Some([u, v]) = self.missing_edges.first() {
            format!("missing edge {u}-{v}")
        } else {
            "valid".into()
        }
    }
}

/// Compares the realisation with `g` under the identity on vertex names.
pub fn verify_representation(g: &Graph, rep: &RigRepresentation) -> Result<RepresentationReport> {
    if rep.regions.len() != g.vertex_count() || rep.regions.keys().zip(g.vertices()).any(|(&a, b)| a != b) {
        return Err(Error::DomainMismatch(format!(
            "representation has {} regions, graph has {} vertices",
            rep.regions.len(),
            g.vertex_count()
        )));
    }
    let r = realize(rep)?;
    let missing_edges: Vec<[VertexId; 2]> = g.edges().filter(|&(u, v)| !r.has_edge(u, v)).map(|(u, v)| [u, v]).collect();
    let extra_edges: Vec<[VertexId; 2]> = r.edges().filter(|&(u, v)| !g.has_edge(u, v)).map(|(u, v)| [u, v]).collect();
    Ok(RepresentationReport { valid: missing_edges.is_empty() && extra_edges.is_empty(), missing_edges, extra_edges })
}

/// Hosts above this size are refused by [`find_rig_representation`].
pub const RIG_HOST_GUARD: usize = 20;

/// Exhaustive backtracking over connected host subsets of size at most
/// `max_region_size` (default `|V(host)|`), with forward checking of the
/// intersection constraints. `Absent` is relative to the size cap.
pub fn find_rig_representation(
    g: &Graph,
    host: &Graph,
    max_region_size: Option<usize>,
    budget: Option<u64>,
) -> Result<SearchOutcome<RigRepresentation>> {
    let h = host.vertex_count();
    if h > RIG_HOST_GUARD {
        return Err(Error::SizeGuard { limit: RIG_HOST_GUARD, actual: h });
    }
    let cap = max_region_size.unwrap_or(h);
    if cap == 0 {
        return Err(Error::InvalidParameter("region size cap must be positive".into()));
    }
    let n = g.vertex_count();
    if n > 0 && h == 0 {
        return Ok(SearchOutcome::Absent);
    }
    let nbr: Vec<u32> = host.vertices().map(|v| host.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    let mut subsets: Vec<u32> = (1u32..1 << h)
        .filter(|s| s.count_ones() as usize <= cap && connected_mask(*s, &nbr))
        .collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));

    // most links to already placed vertices first, then high degree
    let mut order: Vec<VertexId> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = g
            .vertices()
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = g.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (links, g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let all: Vec<usize> = (0..subsets.len()).collect();
    let mut domains: Vec<Vec<usize>> = vec![all; n];
    let mut chosen: Vec<u32> = vec![0; n];
    let mut spent = 0u64;
    match assign_regions(g, &order, 0, &subsets, &mut domains, &mut chosen, &mut spent, budget) {
        Step::Found => {
            let regions = g
                .vertices()
                .map(|v| (v, (0..h).filter(|&x| chosen[v] >> x & 1 == 1).collect()))
                .collect();
            let rep = RigRepresentation { host: host.clone(), regions };
            let report = verify_representation(g, &rep)?;
            if !report.valid {
                return Err(Error::Internal(format!("representation search produced {}", report.summary())));
            }
            Ok(SearchOutcome::Found { witness: rep })
        }
        Step::Exhausted => Ok(SearchOutcome::Absent),
        Step::OutOfBudget => Ok(SearchOutcome::Unknown { spent }),
    }
}

fn connected_mask(set: u32, nbr: &[u32]) -> bool {
    let mut reached = 1u32 << set.trailing_zeros();
    loop {
        let mut grown = reached;
        let mut rest = reached;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grown |= nbr[v] & set;
        }
        if grown == reached {
            return reached == set;
        }
        reached = grown;
    }
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

#[allow(clippy::too_many_arguments)]
fn assign_regions(
    g: &Graph,
    order: &[VertexId],
    depth: usize,
    subsets: &[u32],
    domains: &mut [Vec<usize>],
    chosen: &mut [u32],
    spent: &mut u64,
    budget: Option<u64>,
) -> Step {
    let Some(&v) = order.get(depth) else {
        return Step::Found;
    };
    let candidates = domains[v].clone();
    for c in candidates {
        *spent += 1;
        if budget.is_some_and(|b| *spent > b) {
            *spent -= 1;
            return Step::OutOfBudget;
        }
        let s = subsets[c];
        chosen[v] = s;
        // forward check every later vertex
        let mut saved = Vec::new();
        let mut wiped = false;
        for &w in &order[depth + 1..] {
            let adjacent = g.has_edge(v, w);
            let kept: Vec<usize> = domains[w].iter().copied().filter(|&d| (subsets[d] & s != 0) == adjacent).collect();
            let empty = kept.is_empty();
            saved.push((w, std::mem::replace(&mut domains[w], kept)));
            if empty {
                wiped = true;
                break;
            }
        }
        if !wiped {
            match assign_regions(g, order, depth + 1, subsets, domains, chosen, spent, budget) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        for (w, d) in saved {
            domains[w] = d;
        }
    }
    Step::Exhausted
}

/// Turns an induced model of `subdivide(h, 1)` in `realize(rep)` into a minor
/// model of `h` in `rep.host`.
///
/// Branching vertex `v` gets the union `W_v` of the regions of its branch
/// set. For an edge `uv` (`u < v`), a shortest host path from `W_u` to `W_v`
/// inside the regions of the subdivision vertex's branch set is split at its
/// midpoint, the extra middle vertex going to `u`.
pub fn extract_minor_from_rig(h: &Graph, rep: &RigRepresentation, m: &MinorModel) -> Result<MinorModel> {
    let g = realize(rep)?;
    if m.kind != ModelKind::Induced {
        return Err(Error::Precondition("the model of the subdivision must be induced".into()));
    }
    let hs = subdivide(h, 1)?;
    let report = verify_model(&hs, &g, m)?;
    if let Some(v) = report.violation {
        return Err(Error::Precondition(format!("not an induced model of the 1-subdivision: {v}")));
    }
    let union_of = |u: VertexId| -> BTreeSet<VertexId> {
        m.assignment[&u].iter().flat_map(|x| rep.regions[x].iter().copied()).collect()
    };
    let n = h.vertex_count();
    let mut out: Vec<BTreeSet<VertexId>> = (0..n).map(union_of).collect();
    let host = &rep.host;
    for (e, (u, v)) in h.edges().enumerate() {
        let corridor = union_of(n + e);
        let path = shortest_path_within(host, &corridor, &out[u], &out[v]).ok_or_else(|| {
            Error::Construction(format!("edge {u}-{v}: no path inside its subdivision regions"))
        })?;
        let interior = &path[1..path.len() - 1];
        let split = interior.len().div_ceil(2);
        out[u].extend(interior[..split].iter().copied());
        out[v].extend(interior[split..].iter().copied());
    }
    let model = MinorModel::from_sets(ModelKind::Ordinary, out);
    let check = verify_model(h, host, &model)?;
    if let Some(v) = check.violation {
        return Err(Error::Internal(format!("extracted model fails verification: {v}")));
    }
    Ok(model)
}

/// Shortest path from `from` to `to` whose vertices all lie in `within`,
/// as a vertex sequence starting in `from` and ending in `to`.
fn shortest_path_within(
    g: &Graph,
    within: &BTreeSet<VertexId>,
    from: &BTreeSet<VertexId>,
    to: &BTreeSet<VertexId>,
) -> Option<Vec<VertexId>> {
    let mut parent = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in from.intersection(within) {
        parent[s] = s;
        queue.push_back(s);
    }
    while let Some(x) = queue.pop_front() {
        if to.contains(&x) {
            let mut path = vec![x];
            let mut y = x;
            while parent[y] != y {
                y = parent[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(x) {
            if parent[w] == usize::MAX && within.contains(&w) {
                parent[w] = x;
                queue.push_back(w);
            }
        }
    }
    None
}
