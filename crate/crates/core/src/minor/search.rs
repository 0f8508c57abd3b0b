//! Exact minor search as a host-vertex labelling problem.
//!
//! Host vertices are visited in a fixed BFS order and each receives a
//! pattern vertex (its branch set) or nothing. A branch set is rooted at its
//! first vertex in that order. After every assignment each started branch set
//! must still be able to become connected through unassigned vertices it may
//! use, and every pattern edge must still be realisable.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::reduce::{prepare, Instance, PatternShape};
use super::{verify_model, MinorModel, ModelKind, SearchOutcome};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

const UNASSIGNED: u8 = u8::MAX;
const UNUSED: u8 = u8::MAX - 1;
/// Pattern vertices are tracked in a `u64` mask.
pub const MAX_PATTERN_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search nodes; `None` means unlimited.
    pub budget: Option<u64>,
    /// Worker threads; 1 keeps the search sequential and deterministic.
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: None, jobs: 1 }
    }
}

/// Searches for one model of `pattern` in `host`.
pub fn find_model(pattern: &Graph, host: &Graph, kind: ModelKind, budget: Option<u64>) -> Result<SearchOutcome<MinorModel>> {
    find_model_with(pattern, host, kind, &SearchConfig { budget, jobs: 1 })
}

pub fn find_model_with(
    pattern: &Graph,
    host: &Graph,
    kind: ModelKind,
    config: &SearchConfig,
) -> Result<SearchOutcome<MinorModel>> {
    let run = run(pattern, host, kind, config, 1)?;
    Ok(match run.models.into_iter().next() {
        Some(m) => SearchOutcome::Found { witness: m },
        None if run.exhausted => SearchOutcome::Unknown { spent: run.spent },
        None => SearchOutcome::Absent,
    })
}

/// Models found by [`find_models`].
#[derive(Debug, Clone)]
pub struct ModelEnumeration {
    pub models: Vec<MinorModel>,
    /// The budget ran out before the search space was exhausted.
    pub exhausted: bool,
    pub spent: u64,
}

/// Enumerates up to `limit` distinct models. Without reductions (induced
/// search) every valid model is reachable; ordinary search reports models of
/// the reduced host lifted back.
pub fn find_models(
    pattern: &Graph,
    host: &Graph,
    kind: ModelKind,
    limit: usize,
    budget: Option<u64>,
) -> Result<ModelEnumeration> {
    run(pattern, host, kind, &SearchConfig { budget, jobs: 1 }, limit)
}

fn run(pattern: &Graph, host: &Graph, kind: ModelKind, config: &SearchConfig, limit: usize) -> Result<ModelEnumeration> {
    let k = pattern.vertex_count();
    if k == 0 || host.vertex_count() == 0 {
        return Err(Error::InvalidParameter("pattern and host must be non-empty".into()));
    }
    if k > MAX_PATTERN_VERTICES {
        return Err(Error::InvalidParameter(format!("pattern has {k} vertices, at most {MAX_PATTERN_VERTICES} supported")));
    }
    if limit == 0 {
        return Err(Error::InvalidParameter("limit must be positive".into()));
    }
    let shape = PatternShape::of(pattern);
    let ctl = Control::new(config.budget);
    let mut models = Vec::new();
    for inst in prepare(&shape, host, kind) {
        let problem = Problem::new(pattern, &inst, kind, shape.connected, limit == 1);
        let labellings = if config.jobs > 1 {
            problem.search_parallel(&ctl, limit - models.len(), config.jobs)
        } else {
            let mut s = Searcher::new(&problem, &ctl, limit - models.len());
            s.dfs(0);
            s.found
        };
        for lab in labellings {
            let m = lift(&problem, &inst, &lab, kind);
            let report = verify_model(pattern, host, &m)?;
            if !report.valid {
                return Err(Error::Internal(format!("search produced an invalid model: {}", report.violation.unwrap())));
            }
            models.push(m);
        }
        if models.len() >= limit || ctl.exhausted.load(Ordering::Relaxed) {
            break;
        }
    }
    Ok(ModelEnumeration { models, exhausted: ctl.exhausted.load(Ordering::Relaxed), spent: ctl.spent.load(Ordering::Relaxed) })
}

fn lift(problem: &Problem, inst: &Instance, lab: &[u8], kind: ModelKind) -> MinorModel {
    let mut m = MinorModel::new(kind);
    for u in 0..problem.k {
        m.assignment.insert(problem.label_vertex[u], Default::default());
    }
    for (x, &l) in lab.iter().enumerate() {
        if (l as usize) < problem.k {
            m.assignment.get_mut(&problem.label_vertex[l as usize]).unwrap().extend(inst.members[x].iter().copied());
        }
    }
    m
}

struct Control {
    budget: Option<u64>,
    spent: AtomicU64,
    exhausted: AtomicBool,
    stop: AtomicBool,
}

impl Control {
    fn new(budget: Option<u64>) -> Self {
        Control { budget, spent: AtomicU64::new(0), exhausted: AtomicBool::new(false), stop: AtomicBool::new(false) }
    }

    /// Charges one node; `false` once the search must stop.
    #[inline]
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let spent = self.spent.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| spent > b) {
            self.spent.fetch_sub(1, Ordering::Relaxed);
            self.exhausted.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

struct Problem {
    n: usize,
    k: usize,
    adj: Vec<Vec<usize>>,
    nbr: Vec<VertexSet>,
    /// Visiting order of host vertices.
    order: Vec<usize>,
    /// Label ℓ stands for pattern vertex `label_vertex[ℓ]`.
    label_vertex: Vec<VertexId>,
    /// Labels a neighbour of an ℓ-vertex may carry (induced search).
    compat: Vec<u64>,
    pedges: Vec<(usize, usize)>,
    /// A label may only be started after its preceding twin (off when
    /// enumerating, so that twin-swapped models are all reported).
    twin_prev: Vec<Option<usize>>,
    induced: bool,
    /// Every host vertex must be used (sound for ordinary search with a
    /// connected pattern in a connected host).
    spanning: bool,
}

impl Problem {
    fn new(pattern: &Graph, inst: &Instance, kind: ModelKind, pattern_connected: bool, break_twins: bool) -> Self {
        let g = &inst.graph;
        let n = g.vertex_count();
        let k = pattern.vertex_count();
        let mut label_vertex: Vec<VertexId> = pattern.vertices().collect();
        label_vertex.sort_by_key(|&u| (std::cmp::Reverse(pattern.degree(u)), u));
        let mut label_of = vec![0; k];
        for (l, &u) in label_vertex.iter().enumerate() {
            label_of[u] = l;
        }
        let padj: Vec<u64> = label_vertex
            .iter()
            .map(|&u| pattern.neighbors(u).iter().fold(0u64, |m, &w| m | 1 << label_of[w]))
            .collect();
        let compat = (0..k).map(|l| padj[l] | 1 << l).collect();
        let mut pedges: Vec<(usize, usize)> = pattern
            .edges()
            .map(|(a, b)| (label_of[a].min(label_of[b]), label_of[a].max(label_of[b])))
            .collect();
        pedges.sort_unstable();
        let twins = |a: usize, b: usize| padj[a] & !(1 << b) == padj[b] & !(1 << a);
        let twin_prev = (0..k).map(|l| (0..l).rev().find(|&e| break_twins && twins(e, l))).collect();

        let start = g.vertices().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in std::iter::once(start).chain(g.vertices()) {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut head = order.len();
            order.push(root);
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &w in g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
            }
        }
        Problem {
            n,
            k,
            adj: g.vertices().map(|v| g.neighbors(v).to_vec()).collect(),
            nbr: g.neighbor_sets(),
            order,
            label_vertex,
            compat,
            pedges,
            twin_prev,
            induced: kind == ModelKind::Induced,
            spanning: kind == ModelKind::Ordinary && pattern_connected && g.is_connected(),
        }
    }

    fn search_parallel(&self, ctl: &Control, limit: usize, jobs: usize) -> Vec<Vec<u8>> {
        let depth = self.n.min(8);
        let mut collector = Searcher::new(self, ctl, usize::MAX);
        let mut prefixes = Vec::new();
        collector.collect_prefixes(0, depth, &mut prefixes);
        let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(p) => p,
            Err(_) => {
                let mut s = Searcher::new(self, ctl, limit);
                s.dfs(0);
                return s.found;
            }
        };
        let results: Vec<Vec<Vec<u8>>> = pool.install(|| {
            prefixes
                .par_iter()
                .map(|prefix| {
                    let mut s = Searcher::new(self, ctl, limit);
                    for (t, &c) in prefix.iter().enumerate() {
                        let ok = s.assign(t, c);
                        debug_assert!(ok, "prefix was feasible when collected");
                    }
                    s.dfs(prefix.len());
                    if s.found.len() >= limit {
                        ctl.stop.store(true, Ordering::Relaxed);
                    }
                    s.found
                })
                .collect()
        });
        let found: Vec<Vec<u8>> = results.into_iter().flatten().take(limit).collect();
        if !found.is_empty() && !ctl.exhausted.load(Ordering::Relaxed) {
            // an early stop after a witness is not a budget exhaustion
            ctl.stop.store(false, Ordering::Relaxed);
        }
        found
    }
}

struct Searcher<'a> {
    p: &'a Problem,
    ctl: &'a Control,
    lab: Vec<u8>,
    members: Vec<VertexSet>,
    unassigned: VertexSet,
    unassigned_count: usize,
    started: u64,
    /// `regions[t][ℓ]`: vertices label ℓ can still reach before visiting
    /// `order[t]`; `nregions` holds their neighbourhoods.
    regions: Vec<Vec<VertexSet>>,
    nregions: Vec<Vec<VertexSet>>,
    limit: usize,
    found: Vec<Vec<u8>>,
}

impl<'a> Searcher<'a> {
    fn new(p: &'a Problem, ctl: &'a Control, limit: usize) -> Self {
        let empty = VertexSet::new(p.n);
        Searcher {
            p,
            ctl,
            lab: vec![UNASSIGNED; p.n],
            members: vec![empty.clone(); p.k],
            unassigned: VertexSet::from_iter_with_capacity(p.n, 0..p.n),
            unassigned_count: p.n,
            started: 0,
            regions: vec![vec![empty.clone(); p.k]; p.n + 1],
            nregions: vec![vec![empty; p.k]; p.n + 1],
            limit,
            found: Vec::new(),
        }
    }

    fn all_labels(&self) -> u64 {
        if self.p.k == 64 {
            u64::MAX
        } else {
            (1u64 << self.p.k) - 1
        }
    }

    /// Labels an unassigned vertex may still take.
    #[inline]
    fn allowed(&self, y: usize) -> u64 {
        let mut mask = self.all_labels();
        if self.p.induced {
            for &z in &self.p.adj[y] {
                let l = self.lab[z];
                if (l as usize) < self.p.k {
                    mask &= self.p.compat[l as usize];
                }
            }
        }
        mask
    }

    fn candidates(&self, t: usize) -> Vec<u8> {
        let x = self.p.order[t];
        let allowed = self.allowed(x);
        let mut out = Vec::new();
        for l in 0..self.p.k {
            if self.started >> l & 1 == 1 && allowed >> l & 1 == 1 && self.regions[t][l].contains(x) {
                out.push(l as u8);
            }
        }
        for l in 0..self.p.k {
            if self.started >> l & 1 == 0
                && allowed >> l & 1 == 1
                && self.p.twin_prev[l].is_none_or(|e| self.started >> e & 1 == 1)
            {
                out.push(l as u8);
            }
        }
        if !self.p.spanning {
            out.push(UNUSED);
        }
        out
    }

    fn dfs(&mut self, t: usize) -> bool {
        if t == self.p.n {
            if self.started == self.all_labels() {
                self.found.push(self.lab.clone());
                return self.found.len() < self.limit;
            }
            return true;
        }
        for c in self.candidates(t) {
            if !self.ctl.tick() {
                return false;
            }
            let feasible = self.assign(t, c);
            let go_on = !feasible || self.dfs(t + 1);
            self.unassign(t, c);
            if !go_on {
                return false;
            }
        }
        true
    }

    fn collect_prefixes(&mut self, t: usize, depth: usize, out: &mut Vec<Vec<u8>>) {
        if t == depth {
            out.push(self.p.order[..t].iter().map(|&x| self.lab[x]).collect());
            return;
        }
        for c in self.candidates(t) {
            if self.assign(t, c) {
                self.collect_prefixes(t + 1, depth, out);
            }
            self.unassign(t, c);
        }
    }

    /// Gives `order[t]` the label `c` and computes the regions for depth
    /// `t + 1`; returns whether the partial labelling is still extendable.
    fn assign(&mut self, t: usize, c: u8) -> bool {
        let x = self.p.order[t];
        self.lab[x] = c;
        self.unassigned.remove(x);
        self.unassigned_count -= 1;
        let ci = c as usize;
        let fresh = ci < self.p.k && self.started >> ci & 1 == 0;
        if ci < self.p.k {
            self.members[ci].insert(x);
            self.started |= 1 << ci;
        }
        self.update_regions(t, x, c, fresh)
    }

    fn unassign(&mut self, t: usize, c: u8) {
        let x = self.p.order[t];
        self.lab[x] = UNASSIGNED;
        self.unassigned.insert(x);
        self.unassigned_count += 1;
        let ci = c as usize;
        if ci < self.p.k {
            self.members[ci].remove(x);
            if self.members[ci].is_empty() {
                self.started &= !(1 << ci);
            }
        }
    }

    fn update_regions(&mut self, t: usize, x: usize, c: u8, fresh: bool) -> bool {
        let p = self.p;
        let (before, after) = self.regions.split_at_mut(t + 1);
        let (nbefore, nafter) = self.nregions.split_at_mut(t + 1);
        let (prev, next) = (&before[t], &mut after[0]);
        let (nprev, nnext) = (&nbefore[t], &mut nafter[0]);
        let mut open_labels = 0u64;
        for l in 0..p.k {
            if self.started >> l & 1 == 0 {
                continue;
            }
            let touched = (l == c as usize && fresh)
                || prev[l].contains(x)
                || (p.induced
                    && (c as usize) < p.k
                    && p.compat[c as usize] >> l & 1 == 0
                    && p.nbr[x].intersects(&prev[l]));
            if touched {
                let lab = &self.lab;
                let allowed = |y: usize| {
                    let mut mask = u64::MAX;
                    if p.induced {
                        for &z in &p.adj[y] {
                            let lz = lab[z];
                            if (lz as usize) < p.k {
                                mask &= p.compat[lz as usize];
                            }
                        }
                    }
                    mask >> l & 1 == 1
                };
                let region = &mut next[l];
                region.clear();
                let root = self.members[l].first().expect("started label has a member");
                region.insert(root);
                let mut stack = vec![root];
                while let Some(v) = stack.pop() {
                    for &w in &p.adj[v] {
                        if region.contains(w) {
                            continue;
                        }
                        let lw = lab[w];
                        if lw as usize == l || (lw == UNASSIGNED && allowed(w)) {
                            region.insert(w);
                            stack.push(w);
                        }
                    }
                }
                if !self.members[l].is_subset(region) {
                    return false;
                }
                let nregion = &mut nnext[l];
                nregion.clear();
                for v in region.iter() {
                    nregion.union_with(&p.nbr[v]);
                }
            } else {
                next[l].clone_from(&prev[l]);
                nnext[l].clone_from(&nprev[l]);
            }
            if next[l].intersects(&self.unassigned) || nnext[l].intersects(&self.unassigned) {
                open_labels |= 1 << l;
            }
        }
        for &(a, b) in &p.pedges {
            let (sa, sb) = (self.started >> a & 1 == 1, self.started >> b & 1 == 1);
            let ok = match (sa, sb) {
                (true, true) => nnext[a].intersects(&next[b]),
                (true, false) => open_labels >> a & 1 == 1,
                (false, true) => open_labels >> b & 1 == 1,
                (false, false) => true,
            };
            if !ok {
                return false;
            }
        }
        let unstarted = p.k - self.started.count_ones() as usize;
        unstarted <= self.unassigned_count
    }
}
