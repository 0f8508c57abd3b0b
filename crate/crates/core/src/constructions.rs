//! Generators for the apex-grid family and its path-augmented supergraphs.
//!
//! Every generator is a pure function of its parameters. The bundle-returning
//! ones also record the Hamiltonian order of the copies, the connector/chord
//! edges of the traceable supergraph, and where the long paths attach.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::graph_serde;
use crate::graph::{Graph, GraphBuilder, Role, VertexId, VertexLabel};
use crate::ops::{contract_sets, disjoint_copies, subdivide};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    /// Subdivision parameter.
    pub g: usize,
    /// Grid side and number of copies.
    pub n: usize,
}

impl FamilyParams {
    pub fn new(g: usize, n: usize) -> Result<Self> {
        if g == 0 || n == 0 {
            return Err(Error::InvalidParameter(format!("need g ≥ 1 and n ≥ 1, got g={g}, n={n}")));
        }
        Ok(FamilyParams { g, n })
    }
}

/// Position range `start..end` (0-based, end exclusive) of one copy along the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyRange {
    pub copy: usize,
    pub start: usize,
    pub end: usize,
}

/// A generated graph plus the metadata downstream checks need.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructionBundle {
    pub params: FamilyParams,
    #[serde(with = "graph_serde")]
    pub graph: Graph,
    /// Hamiltonian order of the copies' vertices in the traceable supergraph.
    pub order: Option<Vec<VertexId>>,
    /// Connector and chord edges of the traceable supergraph. For the
    /// path-augmented graphs these are metadata only and absent from `graph`.
    pub extra_edges: Vec<[VertexId; 2]>,
    pub copy_ranges: Vec<CopyRange>,
    /// `b_index[i-1]` is the `i`-th vertex along the order.
    pub b_index: Vec<VertexId>,
    /// `path_attach[j-1][i-1]` is the path vertex of path `j` joined to `b_i`.
    pub path_attach: Vec<Vec<VertexId>>,
    /// Distance between consecutive attachment vertices on a path (0 when no paths).
    pub path_spacing: usize,
    /// Number of vertices of the copies' disjoint union (a prefix of the ids).
    pub base_vertex_count: usize,
}

impl ConstructionBundle {
    pub fn b(&self, i: usize) -> Option<VertexId> {
        i.checked_sub(1).and_then(|k| self.b_index.get(k).copied())
    }

    pub fn p(&self, j: usize, i: usize) -> Option<VertexId> {
        let path = self.path_attach.get(j.checked_sub(1)?)?;
        path.get(i.checked_sub(1)?).copied()
    }

    /// Order position (1-based) of a copy vertex.
    pub fn order_position(&self) -> Vec<usize> {
        let mut pos = vec![0; self.graph.vertex_count()];
        for (k, &v) in self.b_index.iter().enumerate() {
            pos[v] = k + 1;
        }
        pos
    }

    pub fn copy_size(&self) -> usize {
        self.base_vertex_count / self.params.n
    }

    /// Graph on the copies' vertices plus the recorded extra edges.
    pub fn traceable_supergraph(&self) -> Result<Graph> {
        let keep: Vec<VertexId> = (0..self.base_vertex_count).collect();
        let base = self.graph.induced_subgraph(&keep)?;
        let mut b = GraphBuilder::from(&base);
        for &[u, v] in &self.extra_edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }
}

/// The `n × n` grid plus a universal vertex (id `n²`).
pub fn apex_grid(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("grid side must be at least 1".into()));
    }
    let mut b = GraphBuilder::from(&Graph::grid(n, n));
    let apex = b.add_vertex(Some(VertexLabel::new(Role::Apex)));
    for v in 0..apex {
        b.add_edge(v, apex)?;
    }
    Ok(b.build())
}

/// Grid vertices `a_{i,j}` (column `i`, path `j`, id `(j-1)·n + i-1`) joined
/// along each path, plus `s_i` (id `n² + i-1`) dominating column `i`.
pub fn pd_grid(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("grid side must be at least 1".into()));
    }
    let mut b = GraphBuilder::new();
    for j in 1..=n {
        for i in 1..=n {
            b.add_vertex(Some(VertexLabel::new(Role::Grid { col: i, row: j })));
        }
    }
    let a = |i: usize, j: usize| (j - 1) * n + (i - 1);
    for i in 1..=n {
        let s = b.add_vertex(Some(VertexLabel::in_copy(i - 1, Role::Apex)));
        for j in 1..=n {
            b.add_edge(s, a(i, j))?;
            if i < n {
                b.add_edge(a(i, j), a(i + 1, j))?;
            }
        }
    }
    Ok(b.build())
}

/// One copy of the `g`-subdivided apex grid, apex-edge subdivision vertices
/// relabelled as [`Role::ApexSubdivision`].
fn subdivided_apex_grid(g: usize, n: usize) -> Result<Graph> {
    let apex = n * n;
    let s = subdivide(&apex_grid(n)?, g)?;
    let labels = s
        .labels()
        .iter()
        .map(|l| match l {
            Some(VertexLabel { role: Role::EdgeSubdivision { a, b, index }, copy }) if *b == apex => {
                let (col, row) = (a % n + 1, a / n + 1);
                Some(VertexLabel { copy: *copy, role: Role::ApexSubdivision { col, row, index: *index } })
            }
            other => other.clone(),
        })
        .collect();
    s.with_labels(labels)
}

/// `n` disjoint copies of the `g`-subdivided apex `n × n` grid.
pub fn build_bn(g: usize, n: usize) -> Result<Graph> {
    FamilyParams::new(g, n)?;
    disjoint_copies(&subdivided_apex_grid(g, n)?, n)
}

/// Local vertex lookup inside one subdivided copy.
struct CopyIndex {
    n: usize,
    g: usize,
    edge_sub: HashMap<(VertexId, VertexId, usize), VertexId>,
    apex_sub: HashMap<(usize, usize, usize), VertexId>,
}

impl CopyIndex {
    fn new(copy: &Graph, g: usize, n: usize) -> Self {
        let mut edge_sub = HashMap::new();
        let mut apex_sub = HashMap::new();
        for v in copy.vertices() {
            match copy.label(v).map(|l| &l.role) {
                Some(&Role::EdgeSubdivision { a, b, index }) => {
                    edge_sub.insert((a, b, index), v);
                }
                Some(&Role::ApexSubdivision { col, row, index }) => {
                    apex_sub.insert((col, row, index), v);
                }
                _ => {}
            }
        }
        CopyIndex { n, g, edge_sub, apex_sub }
    }

    fn v(&self, c: usize, r: usize) -> VertexId {
        (r - 1) * self.n + (c - 1)
    }

    fn apex(&self) -> VertexId {
        self.n * self.n
    }

    /// Vertical chain from `(c,r)` down to `(c,r+1)`, index 1 next to `(c,r)`.
    fn h(&self, c: usize, r: usize, k: usize) -> VertexId {
        self.edge_sub[&(self.v(c, r), self.v(c, r + 1), k)]
    }

    /// Horizontal chain from `(c,r)` to `(c+1,r)`.
    fn w(&self, c: usize, r: usize, k: usize) -> VertexId {
        self.edge_sub[&(self.v(c, r), self.v(c + 1, r), k)]
    }

    /// Apex chain of `(c,r)`, index 1 next to the grid vertex.
    fn q(&self, c: usize, r: usize, k: usize) -> VertexId {
        self.apex_sub[&(c, r, k)]
    }
}

/// Hamiltonian path of one copy (plus chords), from grid vertex (1,1) to the apex.
///
/// Columns are swept in snake order. At each grid vertex the apex chain and
/// the outgoing horizontal chain are threaded by chords that stay inside the
/// grid face holding that apex chain, so the copy minus its apex stays planar.
fn weave_copy(ix: &CopyIndex) -> (Vec<VertexId>, Vec<(VertexId, VertexId)>) {
    let (n, g) = (ix.n, ix.g);
    let mut order = Vec::new();
    let mut chords = Vec::new();
    let chain = |f: &dyn Fn(usize) -> VertexId, ks: Vec<usize>| ks.into_iter().map(f).collect::<Vec<_>>();
    let up: Vec<usize> = (1..=g).collect();
    let down: Vec<usize> = (1..=g).rev().collect();
    for c in 1..=n {
        let descending = c % 2 == 1;
        let rows: Vec<usize> = if descending { (1..=n).collect() } else { (1..=n).rev().collect() };
        for (step, &r) in rows.iter().enumerate() {
            let last_row = step + 1 == n;
            order.push(ix.v(c, r));
            let q_out = chain(&|k| ix.q(c, r, k), up.clone());
            if last_row {
                order.extend(&q_out);
                if c < n {
                    // transition to the next column along the horizontal chain
                    chords.push((ix.q(c, r, g), ix.w(c, r, 1)));
                    order.extend(chain(&|k| ix.w(c, r, k), up.clone()));
                }
                continue;
            }
            // chain towards the next grid vertex of this column
            let (next_chain, entry) = if descending {
                (chain(&|k| ix.h(c, r, k), up.clone()), ix.h(c, r, 1))
            } else {
                (chain(&|k| ix.h(c, r - 1, k), down.clone()), ix.h(c, r - 1, g))
            };
            if c < n {
                order.extend(chain(&|k| ix.w(c, r, k), up.clone()));
                chords.push((ix.w(c, r, g), ix.q(c, r, g)));
                order.extend(chain(&|k| ix.q(c, r, k), down.clone()));
                chords.push((ix.q(c, r, 1), entry));
            } else {
                order.extend(&q_out);
                chords.push((ix.q(c, r, g), entry));
            }
            order.extend(next_chain);
        }
    }
    order.push(ix.apex());
    (order, chords)
}

/// `B_{g,n}` together with the chord/connector edges making it traceable.
///
/// The returned order is a Hamiltonian path of the supergraph; each copy is a
/// contiguous stretch from its grid vertex (1,1) to its apex, and consecutive
/// copies are joined by a single connector from the earlier apex.
pub fn build_bn_prime(g: usize, n: usize) -> Result<ConstructionBundle> {
    let params = FamilyParams::new(g, n)?;
    let copy = subdivided_apex_grid(g, n)?;
    let m = copy.vertex_count();
    let ix = CopyIndex::new(&copy, g, n);
    let (local_order, local_chords) = weave_copy(&ix);
    let graph = disjoint_copies(&copy, n)?;

    let mut order = Vec::with_capacity(n * m);
    let mut extra = BTreeSet::new();
    let mut copy_ranges = Vec::new();
    for c in 0..n {
        let off = c * m;
        copy_ranges.push(CopyRange { copy: c, start: order.len(), end: order.len() + m });
        order.extend(local_order.iter().map(|v| v + off));
        for &(u, v) in &local_chords {
            extra.insert([u.min(v) + off, u.max(v) + off]);
        }
        if c > 0 {
            let prev_apex = (c - 1) * m + ix.apex();
            let start = off + ix.v(1, 1);
            extra.insert([prev_apex.min(start), prev_apex.max(start)]);
        }
    }
    let mut b = GraphBuilder::from(&graph);
    for &[u, v] in &extra {
        if !b.add_edge(u, v)? {
            return Err(Error::Construction(format!("extra edge {u}-{v} already in the base graph")));
        }
    }
    let bundle = ConstructionBundle {
        params,
        graph: b.build(),
        order: Some(order.clone()),
        extra_edges: extra.into_iter().collect(),
        copy_ranges,
        b_index: order,
        path_attach: Vec::new(),
        path_spacing: 0,
        base_vertex_count: n * m,
    };
    check_bprime_contract(&bundle, &graph).map_err(Error::Construction)?;
    Ok(bundle)
}

/// Checks the traceable-supergraph contract against the base graph:
/// spanning supergraph, Hamiltonian order, contiguous copies, and a single
/// connector per consecutive pair of copies ending at the earlier apex.
pub fn check_bprime_contract(bundle: &ConstructionBundle, base: &Graph) -> std::result::Result<(), String> {
    let sup = &bundle.graph;
    let n = bundle.params.n;
    // (H1)
    if sup.vertex_count() != base.vertex_count() {
        return Err(format!("vertex count {} vs base {}", sup.vertex_count(), base.vertex_count()));
    }
    if let Some((u, v)) = base.edges().find(|&(u, v)| !sup.has_edge(u, v)) {
        return Err(format!("(H1) base edge {u}-{v} missing"));
    }
    // (H2)
    let order = bundle.order.as_ref().ok_or("(H2) no order recorded")?;
    let mut seen = vec![false; sup.vertex_count()];
    for &v in order {
        if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
            return Err(format!("(H2) order is not a permutation (vertex {v})"));
        }
    }
    if order.len() != sup.vertex_count() {
        return Err(format!("(H2) order has {} of {} vertices", order.len(), sup.vertex_count()));
    }
    if let Some(w) = order.windows(2).find(|w| !sup.has_edge(w[0], w[1])) {
        return Err(format!("(H2) consecutive {} and {} are not adjacent", w[0], w[1]));
    }
    // (H3)
    let copy_of = |v: VertexId| base.label(v).and_then(|l| l.copy);
    if bundle.copy_ranges.len() != n {
        return Err(format!("(H3) {} copy ranges for {n} copies", bundle.copy_ranges.len()));
    }
    for r in &bundle.copy_ranges {
        if r.end > order.len() || order[r.start..r.end].iter().any(|&v| copy_of(v) != Some(r.copy)) {
            return Err(format!("(H3) copy {} is not contiguous on {}..{}", r.copy, r.start, r.end));
        }
    }
    if bundle.copy_ranges.iter().map(|r| r.end - r.start).sum::<usize>() != order.len() {
        return Err("(H3) copy ranges do not cover the order".into());
    }
    // (H4)
    let mut connectors = vec![0usize; n];
    for &[u, v] in &bundle.extra_edges {
        let (cu, cv) = (copy_of(u), copy_of(v));
        if cu == cv {
            continue;
        }
        let (Some(cu), Some(cv)) = (cu, cv) else {
            return Err(format!("(H4) extra edge {u}-{v} leaves the copies"));
        };
        let (earlier, x, later, y) = if cu < cv { (cu, u, cv, v) } else { (cv, v, cu, u) };
        if later != earlier + 1 {
            return Err(format!("(H4) extra edge {u}-{v} joins non-consecutive copies"));
        }
        if base.label(x).map(|l| &l.role) != Some(&Role::Apex) {
            return Err(format!("(H4) connector {u}-{v} does not end at the earlier copy's apex"));
        }
        if base.label(y).map(|l| &l.role) != Some(&Role::Grid { col: 1, row: 1 }) {
            return Err(format!("(H4) connector {u}-{v} does not start the later copy at (1,1)"));
        }
        connectors[later] += 1;
    }
    if let Some(c) = (1..n).find(|&c| connectors[c] != 1) {
        return Err(format!("(H4) copies {} and {c} joined by {} connectors", c - 1, connectors[c]));
    }
    Ok(())
}

/// Appends `n` paths of `spacing·|V(B)|` vertices to `B_{g,n}`, joining the
/// `(spacing·i − 1)`-st vertex of every path to `b_i`.
fn attach_paths(g: usize, n: usize, spacing: usize) -> Result<ConstructionBundle> {
    let prime = build_bn_prime(g, n)?;
    let base = build_bn(g, n)?;
    let nb = base.vertex_count();
    let len = spacing * nb;
    let mut b = GraphBuilder::from(&base);
    let mut path_attach = Vec::with_capacity(n);
    for j in 1..=n {
        let first = b.vertex_count();
        for position in 1..=len {
            let v = b.add_vertex(Some(VertexLabel::new(Role::Path { path: j, position })));
            if position > 1 {
                b.add_edge(v - 1, v)?;
            }
        }
        let attach: Vec<VertexId> = (1..=nb).map(|i| first + spacing * i - 2).collect();
        for (i, &p) in attach.iter().enumerate() {
            b.add_edge(p, prime.b_index[i])?;
        }
        path_attach.push(attach);
    }
    Ok(ConstructionBundle {
        params: prime.params,
        graph: b.build(),
        order: prime.order,
        extra_edges: prime.extra_edges,
        copy_ranges: prime.copy_ranges,
        b_index: prime.b_index,
        path_attach,
        path_spacing: spacing,
        base_vertex_count: nb,
    })
}

/// The girth-5 graph: `B_{1,n}` plus `n` paths on `2|V(B)|` vertices with the
/// `(2i−1)`-st vertex of each path joined to `b_i`.
pub fn build_g(n: usize) -> Result<ConstructionBundle> {
    attach_paths(1, n, 2)
}

/// `G_{g,n}`: `B_{g,n}` plus `n` paths on `g|V(B_{g,n})|` vertices with the
/// `(gi−1)`-st vertex of each path joined to `b_i`. Requires `g ≥ 2`.
pub fn build_gg(g: usize, n: usize) -> Result<ConstructionBundle> {
    if g < 2 {
        return Err(Error::InvalidParameter(format!("G_(g,n) needs g ≥ 2, got {g}")));
    }
    attach_paths(g, n, g)
}

/// Contracts each copy and each stretch of a path lying between copy
/// boundaries (as seen through the attachments) to a single vertex.
pub fn collapse_copies_and_stretches(bundle: &ConstructionBundle) -> Result<Graph> {
    if bundle.path_attach.is_empty() {
        return Err(Error::Precondition("bundle has no attached paths".into()));
    }
    let m = bundle.copy_size();
    let s = bundle.path_spacing;
    let mut parts: Vec<Vec<VertexId>> = bundle
        .copy_ranges
        .iter()
        .map(|r| bundle.b_index[r.start..r.end].to_vec())
        .collect();
    for attach in &bundle.path_attach {
        // path vertex at position t has id first + t - 1
        let first = attach[0] + 2 - s;
        for c in 0..bundle.params.n {
            parts.push((first + c * m * s..first + (c + 1) * m * s).collect());
        }
    }
    Ok(contract_sets(&bundle.graph, &parts)?.graph)
}
