//! Induced models of 1-subdivided cliques in the path-augmented graph:
//! normalisation, intervals along the long paths, the interval claims, and
//! the lift of a model to a clique minor model in the traceable supergraph.
//!
//! Branching vertices of `subdivide(K_s, 1)` are `0..s`; the subdivision
//! vertex of the clique edge `{a, b}` (`a < b`) is `s + e` where `e` is the
//! edge's lexicographic index. Paths and attachment indices are 1-based, as
//! in [`ConstructionBundle::p`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions::ConstructionBundle;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::minor::{verify_model, MinorModel, ModelKind, Violation};
use crate::ops::subdivide;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdividedCliqueModel {
    pub s: usize,
    pub model: MinorModel,
}

impl SubdividedCliqueModel {
    /// `subdivide(K_s, 1)`.
    pub fn pattern(s: usize) -> Graph {
        subdivide(&Graph::complete(s), 1).expect("l = 1 is valid")
    }

    /// Pattern vertex of the subdivision of `{a, b}`.
    pub fn subdivision_vertex(s: usize, a: usize, b: usize) -> VertexId {
        let (a, b) = (a.min(b), a.max(b));
        s + (0..a).map(|x| s - 1 - x).sum::<usize>() + (b - a - 1)
    }

    /// Wraps a model after checking it is a valid induced model in the bundle's graph.
    pub fn new(s: usize, model: MinorModel, bundle: &ConstructionBundle) -> Result<Self> {
        if s < 2 {
            return Err(Error::InvalidParameter(format!("clique size must be at least 2, got {s}")));
        }
        if model.kind != ModelKind::Induced {
            return Err(Error::Precondition("model must be induced".into()));
        }
        let m = SubdividedCliqueModel { s, model };
        if let Some(v) = m.violation(bundle)? {
            return Err(Error::Precondition(format!("not an induced model: {v}")));
        }
        Ok(m)
    }

    /// Wraps a model without validation (for hand-built fixtures).
    pub fn unchecked(s: usize, model: MinorModel) -> Self {
        SubdividedCliqueModel { s, model }
    }

    pub fn branch(&self, k: usize) -> &BTreeSet<VertexId> {
        &self.model.assignment[&k]
    }

    pub fn subdivision(&self, a: usize, b: usize) -> &BTreeSet<VertexId> {
        &self.model.assignment[&Self::subdivision_vertex(self.s, a, b)]
    }

    fn set_mut(&mut self, u: VertexId) -> &mut BTreeSet<VertexId> {
        self.model.assignment.get_mut(&u).expect("pattern vertex")
    }

    fn subdivision_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let s = self.s;
        (0..s).flat_map(move |a| (a + 1..s).map(move |b| (a, b)))
    }

    fn violation(&self, bundle: &ConstructionBundle) -> Result<Option<Violation>> {
        Ok(verify_model(&Self::pattern(self.s), &bundle.graph, &self.model)?.violation)
    }

    fn is_valid(&self, bundle: &ConstructionBundle) -> bool {
        matches!(self.violation(bundle), Ok(None))
    }
}

/// Where the long paths sit in a bundle.
struct PathLayout {
    /// `(first id, vertex count)` per path.
    ranges: Vec<(VertexId, usize)>,
    /// attachment vertex → `(j, i)`
    attach: BTreeMap<VertexId, (usize, usize)>,
}

impl PathLayout {
    fn of(bundle: &ConstructionBundle) -> Result<Self> {
        if bundle.path_attach.is_empty() || bundle.path_spacing == 0 {
            return Err(Error::DomainMismatch("bundle has no attached paths".into()));
        }
        let len = bundle.path_spacing * bundle.b_index.len();
        let ranges = bundle.path_attach.iter().map(|a| (a[0] + 2 - bundle.path_spacing, len)).collect();
        let attach = bundle
            .path_attach
            .iter()
            .enumerate()
            .flat_map(|(j, a)| a.iter().enumerate().map(move |(i, &v)| (v, (j + 1, i + 1))))
            .collect();
        Ok(PathLayout { ranges, attach })
    }

    /// `(j, position)` of a path vertex; positions are 1-based.
    fn locate(&self, v: VertexId) -> Option<(usize, usize)> {
        self.ranges
            .iter()
            .enumerate()
            .find(|(_, &(first, len))| v >= first && v < first + len)
            .map(|(j, &(first, _))| (j + 1, v - first + 1))
    }

    /// The two path neighbours of a path vertex (if present).
    fn path_neighbors(&self, v: VertexId) -> [Option<VertexId>; 2] {
        match self.locate(v) {
            Some((j, pos)) => {
                let len = self.ranges[j - 1].1;
                [(pos > 1).then(|| v - 1), (pos < len).then(|| v + 1)]
            }
            None => [None, None],
        }
    }
}

fn check_bundle(m: &SubdividedCliqueModel, bundle: &ConstructionBundle) -> Result<PathLayout> {
    let layout = PathLayout::of(bundle)?;
    let n = bundle.graph.vertex_count();
    if let Some(&x) = m.model.assignment.values().flatten().find(|&&x| x >= n) {
        return Err(Error::DomainMismatch(format!("model uses vertex {x}, bundle graph has {n} vertices")));
    }
    let expected = SubdividedCliqueModel::pattern(m.s).vertex_count();
    if m.model.assignment.len() != expected || m.model.assignment.keys().zip(0..).any(|(&a, b)| a != b) {
        return Err(Error::DomainMismatch(format!("model must assign exactly the {expected} pattern vertices")));
    }
    Ok(layout)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalization {
    Normalized(SubdividedCliqueModel),
    /// A singleton on an attachment vertex could not be moved off it; the
    /// partially normalised (still valid) model is returned.
    Obstructed { partial: SubdividedCliqueModel, reason: String },
}

impl Normalization {
    pub fn model(&self) -> &SubdividedCliqueModel {
        match self {
            Normalization::Normalized(m) | Normalization::Obstructed { partial: m, .. } => m,
        }
    }
}

/// Rewrites a valid induced model until subdivision branch sets are
/// singletons, no such singleton sits on an attachment vertex whose two path
/// neighbours lie in the two adjacent branch sets, and no single vertex can
/// be removed from any branch set.
pub fn normalize_model(m: &SubdividedCliqueModel, bundle: &ConstructionBundle) -> Result<Normalization> {
    let layout = check_bundle(m, bundle)?;
    if let Some(v) = m.violation(bundle)? {
        return Err(Error::Precondition(format!("not an induced model: {v}")));
    }
    let g = &bundle.graph;
    let mut cur = m.clone();
    let rounds = 4 * g.vertex_count() + 8;
    for _ in 0..rounds {
        let mut changed = shrink_subdivisions(&mut cur, bundle)?;
        match slide_off_attachments(&mut cur, bundle, &layout) {
            Ok(moved) => changed |= moved,
            Err(reason) => return Ok(Normalization::Obstructed { partial: cur, reason }),
        }
        changed |= minimise(&mut cur, bundle);
        if !changed {
            return Ok(Normalization::Normalized(cur));
        }
    }
    Ok(Normalization::Obstructed { partial: cur, reason: "normalisation did not stabilise".into() })
}

fn touches(g: &Graph, x: VertexId, set: &BTreeSet<VertexId>) -> bool {
    g.neighbors(x).iter().any(|w| set.contains(w))
}

fn shrink_subdivisions(m: &mut SubdividedCliqueModel, bundle: &ConstructionBundle) -> Result<bool> {
    let g = &bundle.graph;
    let mut changed = false;
    let pairs: Vec<(usize, usize)> = m.subdivision_pairs().collect();
    for (a, b) in pairs {
        let t = SubdividedCliqueModel::subdivision_vertex(m.s, a, b);
        let set = m.model.assignment[&t].clone();
        if set.len() <= 1 {
            continue;
        }
        let (xa, xb) = (m.branch(a).clone(), m.branch(b).clone());
        if let Some(&x) = set.iter().find(|&&x| touches(g, x, &xa) && touches(g, x, &xb)) {
            *m.set_mut(t) = BTreeSet::from([x]);
        } else {
            // walk from the side of X_a to the side of X_b inside the set; all
            // but the last vertex join X_a
            let path = bfs_path(g, &set, |x| touches(g, x, &xa), |x| touches(g, x, &xb))
                .ok_or_else(|| Error::Internal(format!("subdivision set of {a}-{b} does not link its neighbours")))?;
            let (last, rest) = path.split_last().expect("non-empty path");
            m.set_mut(a).extend(rest.iter().copied());
            *m.set_mut(t) = BTreeSet::from([*last]);
            if !m.is_valid(bundle) {
                return Err(Error::Internal(format!("shrinking the subdivision set of {a}-{b} broke the model")));
            }
        }
        changed = true;
    }
    Ok(changed)
}

fn bfs_path(
    g: &Graph,
    within: &BTreeSet<VertexId>,
    is_source: impl Fn(VertexId) -> bool,
    is_target: impl Fn(VertexId) -> bool,
) -> Option<Vec<VertexId>> {
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &x in within.iter().filter(|&&x| is_source(x)) {
        parent.insert(x, x);
        queue.push_back(x);
    }
    while let Some(x) = queue.pop_front() {
        if is_target(x) {
            let mut path = vec![x];
            let mut y = x;
            while parent[&y] != y {
                y = parent[&y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(x) {
            if within.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    None
}

fn slide_off_attachments(
    m: &mut SubdividedCliqueModel,
    bundle: &ConstructionBundle,
    layout: &PathLayout,
) -> std::result::Result<bool, String> {
    let mut changed = false;
    let pairs: Vec<(usize, usize)> = m.subdivision_pairs().collect();
    for (a, b) in pairs {
        let t = SubdividedCliqueModel::subdivision_vertex(m.s, a, b);
        let set = &m.model.assignment[&t];
        if set.len() != 1 {
            continue;
        }
        let x = *set.first().unwrap();
        let Some(&(j, i)) = layout.attach.get(&x) else {
            continue;
        };
        let [Some(y), Some(z)] = layout.path_neighbors(x) else {
            continue;
        };
        let owner = |v: VertexId| [a, b].into_iter().find(|&c| m.branch(c).contains(&v));
        let (Some(oy), Some(oz)) = (owner(y), owner(z)) else {
            continue;
        };
        if oy == oz {
            continue;
        }
        // move the singleton to a path neighbour; x joins the other side
        let mut done = false;
        for (side, far) in [(y, y.checked_sub(1)), (z, Some(z + 1))] {
            let c = if side == y { oy } else { oz };
            let d = if c == a { b } else { a };
            for extend in [false, true] {
                let mut trial = m.clone();
                trial.set_mut(c).remove(&side);
                if extend {
                    match far.filter(|&w| layout.path_neighbors(side).contains(&Some(w))) {
                        Some(w) => {
                            trial.set_mut(c).insert(w);
                        }
                        None => continue,
                    }
                }
                trial.set_mut(d).insert(x);
                *trial.set_mut(t) = BTreeSet::from([side]);
                if trial.is_valid(bundle) {
                    *m = trial;
                    done = true;
                    break;
                }
            }
            if done {
                break;
            }
        }
        if !done {
            return Err(format!("singleton of {a}-{b} sits on p({j},{i}) and cannot slide off"));
        }
        changed = true;
    }
    Ok(changed)
}

fn minimise(m: &mut SubdividedCliqueModel, bundle: &ConstructionBundle) -> bool {
    let mut changed = false;
    let vertices: Vec<VertexId> = m.model.assignment.keys().copied().collect();
    for u in vertices {
        let members: Vec<VertexId> = m.model.assignment[&u].iter().copied().collect();
        for x in members {
            if m.model.assignment[&u].len() <= 1 {
                break;
            }
            m.set_mut(u).remove(&x);
            if m.is_valid(bundle) {
                changed = true;
            } else {
                m.set_mut(u).insert(x);
            }
        }
    }
    changed
}

/// Maximal run of attachment indices covered by one component of a branching
/// set on one path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    /// Branching pattern vertex (0-based).
    pub owner: usize,
    /// Path index `j` (1-based).
    pub path: usize,
    /// Consecutive attachment indices `i` (1-based).
    pub indices: Vec<usize>,
}

impl Interval {
    pub fn min(&self) -> usize {
        self.indices[0]
    }

    pub fn max(&self) -> usize {
        *self.indices.last().unwrap()
    }

    fn set(&self) -> BTreeSet<usize> {
        self.indices.iter().copied().collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{} on P{}: {}..{}", self.owner, self.path, self.min(), self.max())
    }
}

/// Intervals of branching set `k`, path by path.
pub fn intervals_of(m: &SubdividedCliqueModel, bundle: &ConstructionBundle, k: usize) -> Result<Vec<Interval>> {
    let layout = check_bundle(m, bundle)?;
    if k >= m.s {
        return Err(Error::InvalidParameter(format!("branching index {k} out of range for s = {}", m.s)));
    }
    Ok(intervals_with(m, &layout, k))
}

fn intervals_with(m: &SubdividedCliqueModel, layout: &PathLayout, k: usize) -> Vec<Interval> {
    let set = m.branch(k);
    let mut out = Vec::new();
    for (j, &(first, len)) in layout.ranges.iter().enumerate() {
        // path ids are consecutive, so components are runs of consecutive ids
        let mut run: Vec<usize> = Vec::new();
        let mut flush = |run: &mut Vec<usize>| {
            if !run.is_empty() {
                out.push(Interval { owner: k, path: j + 1, indices: std::mem::take(run) });
            }
        };
        for v in first..first + len {
            if set.contains(&v) {
                if let Some(&(_, i)) = layout.attach.get(&v) {
                    run.push(i);
                }
            } else {
                flush(&mut run);
            }
        }
        flush(&mut run);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimWitness {
    pub intervals: Vec<Interval>,
    /// Attachment index involved, when the claim names one.
    pub index: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub holds: bool,
    pub witness: Option<ClaimWitness>,
}

impl ClaimVerdict {
    fn holds() -> Self {
        ClaimVerdict { holds: true, witness: None }
    }

    fn violated(intervals: Vec<Interval>, index: Option<usize>, detail: String) -> Self {
        ClaimVerdict { holds: false, witness: Some(ClaimWitness { intervals, index, detail }) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub nested: ClaimVerdict,
    pub two_cover: ClaimVerdict,
    pub triple: ClaimVerdict,
}

impl ClaimReport {
    pub fn all_hold(&self) -> bool {
        self.nested.holds && self.two_cover.holds && self.triple.holds
    }
}

/// Evaluates the three interval claims over all interval pairs and triples.
pub fn check_claims(m: &SubdividedCliqueModel, bundle: &ConstructionBundle) -> Result<ClaimReport> {
    let layout = check_bundle(m, bundle)?;
    let ints: Vec<Vec<Interval>> = (0..m.s).map(|k| intervals_with(m, &layout, k)).collect();
    let owner = m.model.owner_map();
    Ok(ClaimReport {
        nested: nested_claim(m, bundle, &ints, &owner),
        two_cover: two_cover_claim(m, &layout, &ints),
        triple: triple_claim(m, bundle, &ints),
    })
}

fn nested_claim(
    m: &SubdividedCliqueModel,
    bundle: &ConstructionBundle,
    ints: &[Vec<Interval>],
    owner: &BTreeMap<VertexId, VertexId>,
) -> ClaimVerdict {
    for k in 0..m.s {
        for k2 in (0..m.s).filter(|&k2| k2 != k) {
            for i1 in &ints[k] {
                for i2 in &ints[k2] {
                    let (a, b) = (i1.set(), i2.set());
                    if a.is_subset(&b) {
                        return ClaimVerdict::violated(vec![i1.clone(), i2.clone()], None, format!("{i1} lies inside {i2}"));
                    }
                    if k > k2 {
                        continue;
                    }
                    let sub = SubdividedCliqueModel::subdivision_vertex(m.s, k, k2);
                    let used: Vec<(usize, VertexId)> = a
                        .intersection(&b)
                        .filter_map(|&i| bundle.b(i).map(|v| (i, v)))
                        .filter(|(_, v)| owner.contains_key(v))
                        .collect();
                    let bad = used.len() > 1 || used.iter().any(|(_, v)| owner[v] != sub || m.model.assignment[&sub].len() != 1);
                    if bad {
                        let (i, _) = used[used.len() - 1];
                        return ClaimVerdict::violated(
                            vec![i1.clone(), i2.clone()],
                            Some(i),
                            format!("common indices of {i1} and {i2} carry used vertices other than the single s({k},{k2})"),
                        );
                    }
                }
            }
        }
    }
    ClaimVerdict::holds()
}

fn two_cover_claim(m: &SubdividedCliqueModel, layout: &PathLayout, ints: &[Vec<Interval>]) -> ClaimVerdict {
    for k in 0..m.s {
        for k1 in (0..m.s).filter(|&x| x != k) {
            for k2 in (k1 + 1..m.s).filter(|&x| x != k) {
                let sub = m.subdivision(k1, k2);
                let extra = match (sub.len(), sub.first()) {
                    (1, Some(x)) => layout.attach.get(x).map(|&(_, i)| i),
                    _ => None,
                };
                for i0 in &ints[k] {
                    let a = i0.set();
                    for i1 in &ints[k1] {
                        for i2 in &ints[k2] {
                            let mut cover: BTreeSet<usize> = i1.set().union(&i2.set()).copied().collect();
                            if a.is_subset(&cover) {
                                return ClaimVerdict::violated(
                                    vec![i0.clone(), i1.clone(), i2.clone()],
                                    None,
                                    format!("{i0} lies inside {i1} ∪ {i2}"),
                                );
                            }
                            if let Some(i) = extra {
                                cover.insert(i);
                                if a.is_subset(&cover) {
                                    return ClaimVerdict::violated(
                                        vec![i0.clone(), i1.clone(), i2.clone()],
                                        Some(i),
                                        format!("{i0} lies inside {i1} ∪ {i2} ∪ {{{i}}} with s({k1},{k2}) on index {i}"),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    ClaimVerdict::holds()
}

fn triple_claim(m: &SubdividedCliqueModel, bundle: &ConstructionBundle, ints: &[Vec<Interval>]) -> ClaimVerdict {
    let nb = bundle.b_index.len();
    let hits = |k: usize, i: usize| {
        let x = m.branch(k);
        bundle.b(i).is_some_and(|v| x.contains(&v))
            || (1..=bundle.path_attach.len()).any(|j| bundle.p(j, i).is_some_and(|v| x.contains(&v)))
    };
    for k in 0..m.s {
        for k1 in (0..m.s).filter(|&x| x != k) {
            for i0 in &ints[k] {
                for i1 in &ints[k1] {
                    if i0.set().is_disjoint(&i1.set()) || i0.min() >= i1.min() {
                        continue;
                    }
                    let lo = (i1.min() - 1).max(1);
                    let hi = (i0.max() + 1).min(nb);
                    for k2 in (0..m.s).filter(|&x| x != k && x != k1) {
                        if let Some(i) = (lo..=hi).find(|&i| hits(k2, i)) {
                            return ClaimVerdict::violated(
                                vec![i0.clone(), i1.clone()],
                                Some(i),
                                format!("X{k2} meets index {i} between {i1} and {i0}"),
                            );
                        }
                    }
                }
            }
        }
    }
    ClaimVerdict::holds()
}

/// The lifted sets and what holds of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    /// `Y′_k` for `k = 0..s`.
    pub branch_sets: Vec<BTreeSet<VertexId>>,
    pub model: MinorModel,
    pub disjoint: bool,
    pub connected: bool,
    pub adjacent: bool,
    /// `verify_model(K_s, B′, Y′)` passes.
    pub valid: bool,
    pub violation: Option<Violation>,
    pub claims: ClaimReport,
}

/// Builds `Y_k = (X_k ∩ V(B′)) ∪ {b_i : some p_{j,i} ∈ X_k and no earlier
/// X_{k'} holds any p_{j',i}}` and adds to `Y_k` every singleton `s_{k,k'}`
/// (`k < k'`) lying in `V(B′)` outside all `Y`.
pub fn lift_to_bprime(m: &SubdividedCliqueModel, bundle: &ConstructionBundle) -> Result<LiftReport> {
    let layout = check_bundle(m, bundle)?;
    let claims = check_claims(m, bundle)?;
    let bprime = bundle.traceable_supergraph()?;
    let base = bundle.base_vertex_count;
    let s = m.s;
    let holds_index = |k: usize, i: usize| {
        (1..=bundle.path_attach.len()).any(|j| bundle.p(j, i).is_some_and(|v| m.branch(k).contains(&v)))
    };
    let mut y: Vec<BTreeSet<VertexId>> = Vec::with_capacity(s);
    for k in 0..s {
        let mut set: BTreeSet<VertexId> = m.branch(k).iter().copied().filter(|&v| v < base).collect();
        let indices: BTreeSet<usize> = m.branch(k).iter().filter_map(|v| layout.attach.get(v).map(|&(_, i)| i)).collect();
        for i in indices {
            if !(0..k).any(|k1| holds_index(k1, i)) {
                set.insert(bundle.b(i).expect("attachment index within the order"));
            }
        }
        y.push(set);
    }
    let claimed: BTreeSet<VertexId> = y.iter().flatten().copied().collect();
    let mut lifted = y.clone();
    for (a, b) in m.subdivision_pairs() {
        let sub = m.subdivision(a, b);
        if let (1, Some(&x)) = (sub.len(), sub.first()) {
            if x < base && !claimed.contains(&x) {
                lifted[a].insert(x);
            }
        }
    }
    let disjoint = (0..s).all(|a| (a + 1..s).all(|b| lifted[a].is_disjoint(&lifted[b])));
    let connected = lifted.iter().all(|set| !set.is_empty() && bprime.is_connected_set(set));
    let adjacent = (0..s).all(|a| (a + 1..s).all(|b| bprime.sets_adjacent(&lifted[a], &lifted[b])));
    let model = MinorModel::from_sets(ModelKind::Ordinary, lifted.clone());
    let violation = verify_model(&Graph::complete(s), &bprime, &model)?.violation;
    let valid = violation.is_none();
    if valid != (disjoint && connected && adjacent) {
        return Err(Error::Internal("lift verdicts disagree with model verification".into()));
    }
    Ok(LiftReport { branch_sets: lifted, model, disjoint, connected, adjacent, valid, violation, claims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_g;

    fn model(s: usize, sets: BTreeMap<usize, Vec<VertexId>>) -> SubdividedCliqueModel {
        let n = SubdividedCliqueModel::pattern(s).vertex_count();
        let m = MinorModel::from_sets(ModelKind::Induced, (0..n).map(|u| sets.get(&u).cloned().unwrap_or_default()));
        SubdividedCliqueModel::unchecked(s, m)
    }

    /// Path `j` vertex at 1-based position `pos`.
    fn pv(bundle: &ConstructionBundle, j: usize, pos: usize) -> VertexId {
        bundle.p(j, 1).unwrap() + pos - 1
    }

    #[test]
    fn subdivision_vertex_numbering() {
        let p = SubdividedCliqueModel::pattern(4);
        for (e, (a, b)) in Graph::complete(4).edges().enumerate() {
            let t = SubdividedCliqueModel::subdivision_vertex(4, a, b);
            assert_eq!(t, 4 + e);
            assert!(p.has_edge(a, t) && p.has_edge(b, t));
        }
    }

    #[test]
    fn p3_on_a_path_normalises_and_lifts() {
        let g2 = build_g(2).unwrap();
        // X_0 = {pos 1}, s = {pos 2, pos 3}, X_1 = {pos 4} on path 1
        let m = model(2, BTreeMap::from([(0, vec![pv(&g2, 1, 1)]), (2, vec![pv(&g2, 1, 2), pv(&g2, 1, 3)]), (1, vec![pv(&g2, 1, 4)])]));
        let m = SubdividedCliqueModel::new(2, m.model, &g2).unwrap();
        let Normalization::Normalized(n) = normalize_model(&m, &g2).unwrap() else {
            panic!("obstructed")
        };
        assert!(n.is_valid(&g2));
        let sub = n.subdivision(0, 1);
        assert_eq!(sub.len(), 1);
        assert!(!g2.path_attach[0].contains(sub.first().unwrap()), "singleton left on an attachment vertex");
        // idempotent
        assert_eq!(normalize_model(&n, &g2).unwrap(), Normalization::Normalized(n.clone()));
        let lift = lift_to_bprime(&n, &g2).unwrap();
        assert!(lift.claims.all_hold());
        assert!(lift.valid, "{lift:?}");
    }

    #[test]
    fn minimisation_drops_pendant_vertices() {
        let g2 = build_g(2).unwrap();
        // X_0 = {b_1, pos 1 of path 1}: the path vertex is removable
        let b1 = g2.b(1).unwrap();
        let nb: Vec<VertexId> = g2.graph.neighbors(b1).iter().copied().filter(|&v| v < g2.base_vertex_count).collect();
        let far = g2.graph.neighbors(nb[0]).iter().copied().find(|&v| v != b1).unwrap();
        let m = model(2, BTreeMap::from([(0, vec![b1, pv(&g2, 1, 1)]), (2, vec![nb[0]]), (1, vec![far])]));
        let m = SubdividedCliqueModel::new(2, m.model, &g2).unwrap();
        let n = normalize_model(&m, &g2).unwrap();
        assert_eq!(n.model().branch(0), &BTreeSet::from([b1]));
        let lift = lift_to_bprime(n.model(), &g2).unwrap();
        assert!(lift.valid);
    }

    #[test]
    fn intervals_fixtures() {
        let g2 = build_g(2).unwrap();
        let none = model(3, BTreeMap::from([(0, vec![0])]));
        assert!(intervals_of(&none, &g2, 0).unwrap().is_empty());
        // p_{1,3}, midpoint, p_{1,4}
        let m = model(3, BTreeMap::from([(0, vec![g2.p(1, 3).unwrap(), g2.p(1, 3).unwrap() + 1, g2.p(1, 4).unwrap()])]));
        assert_eq!(intervals_of(&m, &g2, 0).unwrap(), vec![Interval { owner: 0, path: 1, indices: vec![3, 4] }]);
        let m = model(3, BTreeMap::from([(1, vec![g2.p(1, 2).unwrap(), g2.p(2, 7).unwrap()])]));
        let ints = intervals_of(&m, &g2, 1).unwrap();
        assert_eq!(ints.len(), 2);
        assert_eq!((ints[0].path, ints[1].path), (1, 2));
        assert!(intervals_of(&m, &g2, 3).is_err());
    }

    #[test]
    fn claim_fixtures() {
        let g2 = build_g(2).unwrap();
        let run = |j: usize, from: usize, to: usize| -> Vec<VertexId> { (g2.p(j, from).unwrap()..=g2.p(j, to).unwrap()).collect() };
        // nothing on the paths: vacuous
        let inside = model(3, BTreeMap::from([(0, vec![0]), (1, vec![2]), (2, vec![4])]));
        assert!(check_claims(&inside, &g2).unwrap().all_hold());
        // I = {2,3} inside I' = {1,..,4}
        let nested = model(3, BTreeMap::from([(0, run(1, 2, 3)), (1, run(2, 1, 4))]));
        let r = check_claims(&nested, &g2).unwrap();
        assert!(!r.nested.holds);
        let w = r.nested.witness.unwrap();
        assert_eq!(w.intervals[0].indices, vec![2, 3]);
        assert_eq!(w.intervals[1].indices, vec![1, 2, 3, 4]);
        // I = {3,..,6} inside I' ∪ I'' = {1,..,4} ∪ {5,..,8}
        let cover = model(3, BTreeMap::from([(0, run(1, 3, 6)), (1, run(2, 1, 4)), (2, run(2, 5, 8))]));
        let r = check_claims(&cover, &g2).unwrap();
        assert!(!r.two_cover.holds);
        // the gap at index 5 is filled by the singleton s(1,2) = p_{2,5}
        let refined = model(
            3,
            BTreeMap::from([
                (0, run(1, 3, 7)),
                (1, run(2, 1, 4)),
                (2, run(2, 6, 9)),
                (SubdividedCliqueModel::subdivision_vertex(3, 1, 2), vec![g2.p(2, 5).unwrap()]),
            ]),
        );
        let r = check_claims(&refined, &g2).unwrap();
        assert!(!r.two_cover.holds);
        assert_eq!(r.two_cover.witness.unwrap().index, Some(5));
        // I = {1..4} (X_0), I' = {3..6} (X_1), X_2 holds b_5
        let triple = model(3, BTreeMap::from([(0, run(1, 1, 4)), (1, run(2, 3, 6)), (2, vec![g2.b(5).unwrap()])]));
        let r = check_claims(&triple, &g2).unwrap();
        assert!(!r.triple.holds);
        assert_eq!(r.triple.witness.unwrap().index, Some(5));
    }

    #[test]
    fn bundle_mismatch_is_rejected() {
        let g2 = build_g(2).unwrap();
        let far = model(2, BTreeMap::from([(0, vec![10_000])]));
        assert!(matches!(lift_to_bprime(&far, &g2), Err(Error::DomainMismatch(_))));
        let bn = crate::constructions::build_bn_prime(1, 2).unwrap();
        let m = model(2, BTreeMap::from([(0, vec![0])]));
        assert!(matches!(lift_to_bprime(&m, &bn), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn six_clique_fixtures_never_lift_invalidly() {
        // branching sets are windows of the paths, subdivision singletons the
        // vertices between; every fixture either fails verification or, when
        // its claims hold, lifts to a valid K6 model
        let g2 = build_g(2).unwrap();
        let s = 6;
        let mut checked = 0;
        for width in 1..=3 {
            for shift in 0..4 {
                let mut sets: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
                for k in 0..s {
                    let j = 1 + k % 2;
                    let start = 1 + shift + (k / 2) * (width + 2);
                    sets.insert(k, run_on(&g2, j, start, start + width - 1));
                }
                for (a, b) in Graph::complete(s).edges() {
                    let t = SubdividedCliqueModel::subdivision_vertex(s, a, b);
                    sets.insert(t, vec![g2.b(1 + t).unwrap()]);
                }
                let m = model(s, sets);
                let Ok(valid) = SubdividedCliqueModel::new(s, m.model.clone(), &g2) else {
                    continue;
                };
                checked += 1;
                let n = normalize_model(&valid, &g2).unwrap();
                let lift = lift_to_bprime(n.model(), &g2).unwrap();
                if lift.claims.all_hold() {
                    assert!(lift.valid);
                }
            }
        }
        assert_eq!(checked, 0, "no induced K6 subdivision model should exist here");
    }

    fn run_on(bundle: &ConstructionBundle, j: usize, from: usize, to: usize) -> Vec<VertexId> {
        (bundle.p(j, from).unwrap()..=bundle.p(j, to).unwrap()).collect()
    }
}
