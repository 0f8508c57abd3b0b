//! Acceptance battery: one line per criterion, non-zero exit on any failure.
//!
//! Expected values come from closed-form counts, independent checkers written
//! here, or exhaustive enumeration; library results are compared against them.

use std::collections::{BTreeSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rigkit::constructions::{
    apex_grid, build_bn, build_bn_prime, build_g, build_gg, check_bprime_contract, collapse_copies_and_stretches,
    pd_grid, ConstructionBundle,
};
use rigkit::iso::{are_isomorphic, connected_graphs, trees};
use rigkit::lifting::{lift_to_bprime, normalize_model, SubdividedCliqueModel};
use rigkit::minor::{brute_force_contains, find_model, find_models, verify_model, MinorModel, ModelKind, SearchOutcome};
use rigkit::ops::{girth, subdivide, GirthValue};
use rigkit::rig::{canonical_subdivision_rep, extract_minor_from_rig, find_rig_representation, verify_representation};
use rigkit::td::{clique_sum, helly_common_node, torso, verify_td, HellyOutcome, TreeDecomposition};
use rigkit::{Graph, VertexId};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

// ---------------------------------------------------------------- oracles

/// Shortest cycle through each edge: drop the edge, BFS between its ends.
fn girth_oracle(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (u, v) in g.edges() {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        dist[u] = 0;
        let mut q = VecDeque::from([u]);
        while let Some(x) = q.pop_front() {
            if best.is_some_and(|b| dist[x] + 1 >= b) {
                break;
            }
            for &w in g.neighbors(x) {
                if (x, w) == (u, v) || (x, w) == (v, u) || dist[w] != usize::MAX {
                    continue;
                }
                dist[w] = dist[x] + 1;
                q.push_back(w);
            }
        }
        if dist[v] != usize::MAX {
            let len = dist[v] + 1;
            best = Some(best.map_or(len, |b| b.min(len)));
        }
    }
    best
}

fn connected_within(g: &Graph, set: &BTreeSet<VertexId>) -> bool {
    let Some(&start) = set.first() else { return false };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &w in g.neighbors(x) {
            if set.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}

fn touching(g: &Graph, a: &BTreeSet<VertexId>, b: &BTreeSet<VertexId>) -> bool {
    a.iter().any(|&x| g.neighbors(x).iter().any(|w| b.contains(w)))
}

/// Minor model check written from the definition.
fn model_oracle(pattern: &Graph, host: &Graph, sets: &[BTreeSet<VertexId>], induced: bool) -> bool {
    let k = pattern.vertex_count();
    if sets.len() != k || sets.iter().any(|s| !connected_within(host, s) || s.iter().any(|&x| x >= host.vertex_count())) {
        return false;
    }
    for a in 0..k {
        for b in a + 1..k {
            if !sets[a].is_disjoint(&sets[b]) {
                return false;
            }
            let t = touching(host, &sets[a], &sets[b]);
            if pattern.has_edge(a, b) && !t || induced && !pattern.has_edge(a, b) && t {
                return false;
            }
        }
    }
    true
}

fn sets_of(m: &MinorModel) -> Vec<BTreeSet<VertexId>> {
    m.assignment.values().cloned().collect()
}

// -------------------------------------------------------------- criteria

/// |V|, |E| of the `n × n` apex grid, then of `n` copies of its `g`-subdivision.
fn apex_counts(n: usize) -> (usize, usize) {
    (n * n + 1, 2 * n * (n - 1) + n * n)
}

fn b_counts(g: usize, n: usize) -> (usize, usize) {
    let (v, e) = apex_counts(n);
    (n * (v + g * e), n * (g + 1) * e)
}

fn c1_counts() -> Outcome {
    let bn = lib(build_bn(1, 2))?;
    ensure((bn.vertex_count(), bn.edge_count()) == (26, 32), || format!("B(1,2) has {}/{}", bn.vertex_count(), bn.edge_count()))?;
    ensure(b_counts(1, 2) == (26, 32), || "closed form disagrees with 26/32".into())?;
    let g = lib(build_g(2))?;
    let (vb, eb) = b_counts(1, 2);
    // two paths on 2|V(B)| vertices, each joined to every b_i
    let expected = (vb * 5, eb + 2 * (2 * vb - 1) + 2 * vb);
    ensure(expected == (130, 186), || format!("closed form gives {expected:?}"))?;
    ensure((g.graph.vertex_count(), g.graph.edge_count()) == expected, || {
        format!("G(2) has {}/{}", g.graph.vertex_count(), g.graph.edge_count())
    })?;
    let mut detail = String::from("B(1,2) 26/32, G(2) 130/186");
    for gg in 2..=3 {
        let v = lib(build_gg(gg, 2))?.graph.vertex_count();
        let want = b_counts(gg, 2).0 * (1 + 2 * gg);
        ensure(v == want, || format!("G({gg},2) has {v} vertices, expected {want}"))?;
        detail.push_str(&format!(", G({gg},2) {v}"));
    }
    Ok(detail)
}

fn c2_girth() -> Outcome {
    let mut parts = Vec::new();
    let mut same = |name: String, g: &Graph| -> Result<Option<usize>, String> {
        let got = girth(g).finite();
        let want = girth_oracle(g);
        ensure(got == want, || format!("{name}: girth {got:?}, oracle {want:?}"))?;
        parts.push(format!("{name}={}", got.map_or("inf".to_string(), |v| v.to_string())));
        Ok(got)
    };
    for n in 2..=3 {
        let v = same(format!("G({n})"), &lib(build_g(n))?.graph)?;
        ensure(v == Some(5), || format!("G({n}) girth {v:?}"))?;
    }
    for g in 1..=3 {
        let v = same(format!("B({g},2)"), &lib(build_bn(g, 2))?)?;
        ensure(v == Some(3 * (g + 1)), || format!("B({g},2) girth {v:?}"))?;
    }
    for g in 5..=8 {
        let v = same(format!("G({g},2)"), &lib(build_gg(g, 2))?.graph)?;
        ensure(v.map_or(true, |x| x >= g), || format!("G({g},2) girth {v:?}"))?;
    }
    ensure(girth(&Graph::path(5)) == GirthValue::Unbounded, || "path has a cycle".into())?;
    Ok(parts.join(" "))
}

fn c3_bprime() -> Outcome {
    for n in 2..=3 {
        let b = lib(build_bn_prime(1, n))?;
        let base = lib(build_bn(1, n))?;
        lib(check_bprime_contract(&b, &base))?;
        // spanning supergraph with a Hamiltonian path
        ensure(b.graph.vertex_count() == base.vertex_count(), || "vertex sets differ".into())?;
        ensure(base.edges().all(|(u, v)| b.graph.has_edge(u, v)), || "base edge missing".into())?;
        let order = b.order.clone().ok_or("no order")?;
        let distinct: BTreeSet<_> = order.iter().copied().collect();
        ensure(distinct.len() == order.len() && order.len() == base.vertex_count(), || "order is not a permutation".into())?;
        ensure(order.windows(2).all(|w| b.graph.has_edge(w[0], w[1])), || "order is not a path".into())?;
    }
    let sup = lib(lib(build_bn_prime(1, 2))?.traceable_supergraph())?;
    let out = lib(find_model(&Graph::complete(6), &sup, ModelKind::Ordinary, Some(100_000_000)))?;
    ensure(out.is_absent(), || format!("K6 in B'(1,2): {}", out.label()))?;
    Ok(format!("contracts ok for n=2,3; K6 in B'(1,2) ({} vertices) Absent", sup.vertex_count()))
}

fn c4_apex() -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=4 {
        let a = lib(apex_grid(n))?;
        ensure((a.vertex_count(), a.edge_count()) == apex_counts(n), || format!("A{n} size"))?;
        let t = Instant::now();
        let out = lib(find_model(&Graph::complete(6), &a, ModelKind::Ordinary, None))?;
        ensure(out.is_absent(), || format!("K6 in A{n}: {}", out.label()))?;
        ensure(t.elapsed() < Duration::from_secs(60), || format!("A{n} took {:?}", t.elapsed()))?;
        parts.push(format!("K6/A{n} Absent"));
    }
    let a3 = lib(apex_grid(3))?;
    let k5 = Graph::complete(5);
    let out = lib(find_model(&k5, &a3, ModelKind::Ordinary, None))?;
    let w = out.witness().ok_or_else(|| format!("K5 in A3: {}", out.label()))?;
    ensure(model_oracle(&k5, &a3, &sets_of(w), false), || "K5 witness fails the oracle".into())?;
    parts.push("K5/A3 Found".into());
    Ok(parts.join(", "))
}

fn c5_oracle() -> Outcome {
    let by_order = lib(connected_graphs(7))?;
    let counts: Vec<usize> = by_order.iter().map(Vec::len).collect();
    // connected graphs up to isomorphism on 1..7 vertices
    ensure(counts == [1, 1, 2, 6, 21, 112, 853], || format!("corpus counts {counts:?}"))?;
    let patterns = [Graph::complete(3), Graph::complete(4), Graph::cycle(4), Graph::path(4), Graph::complete(5)];
    let mut total = 0;
    for h in by_order.concat() {
        for p in &patterns {
            for kind in [ModelKind::Ordinary, ModelKind::Induced] {
                total += 1;
                let want = lib(brute_force_contains(p, &h, kind))?;
                let got = lib(find_model(p, &h, kind, None))?;
                let agree = match &got {
                    SearchOutcome::Found { witness } => want && model_oracle(p, &h, &sets_of(witness), kind == ModelKind::Induced),
                    SearchOutcome::Absent => !want,
                    SearchOutcome::Unknown { .. } => false,
                };
                ensure(agree, || format!("{kind:?} {p:?} in {h:?}: solver {}, brute force {want}", got.label()))?;
            }
        }
    }
    Ok(format!("{} hosts, {total}/{total} agree", counts.iter().sum::<usize>()))
}

fn c6_extraction() -> Outcome {
    let mut parts = Vec::new();
    for s in [3, 4] {
        let h = Graph::complete(s);
        let g = lib(subdivide(&h, 1))?;
        let rep = canonical_subdivision_rep(&g);
        let host = lib(subdivide(&g, 1))?;
        ensure(rep.host == host, || "representation host is not the 1-subdivision".into())?;
        let m = MinorModel::identity(&g, ModelKind::Induced);
        let out = lib(extract_minor_from_rig(&h, &rep, &m))?;
        ensure(lib(verify_model(&h, &host, &out))?.valid, || format!("K{s} extraction rejected"))?;
        ensure(model_oracle(&h, &host, &sets_of(&out), false), || format!("K{s} extraction fails the oracle"))?;
        parts.push(format!("K{s} over {} host vertices", host.vertex_count()));
    }
    Ok(parts.join(", ") + " valid")
}

fn c7_rig() -> Outcome {
    let c4 = Graph::cycle(4);
    let a = lib(find_rig_representation(&c4, &Graph::path(10), None, None))?;
    ensure(a.is_absent(), || format!("C4 over P10: {}", a.label()))?;
    let c8 = lib(subdivide(&c4, 1))?;
    let b = lib(find_rig_representation(&c4, &c8, None, None))?;
    let rep = b.witness().ok_or_else(|| format!("C4 over C8: {}", b.label()))?;
    ensure(lib(verify_representation(&c4, rep))?.valid, || "representation rejected".into())?;
    // intersection graph recomputed from the regions
    for u in 0..4 {
        for v in u + 1..4 {
            let meet = !rep.regions[&u].is_disjoint(&rep.regions[&v]);
            ensure(meet == c4.has_edge(u, v), || format!("regions {u},{v} disagree with C4"))?;
        }
    }
    ensure(rep.regions.values().all(|r| connected_within(&c8, r)), || "disconnected region".into())?;
    Ok("C4/P10 Absent, C4/C8 Found".into())
}

fn c8_collapse() -> Outcome {
    for n in 2..=3 {
        let c = lib(collapse_copies_and_stretches(&lib(build_g(n))?))?;
        let pd = lib(pd_grid(n))?;
        let degrees = |g: &Graph| {
            let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
            d.sort_unstable();
            d
        };
        ensure(degrees(&c) == degrees(&pd), || format!("n={n}: degree sequences differ"))?;
        ensure(lib(are_isomorphic(&c, &pd, false))?, || format!("n={n}: not isomorphic"))?;
    }
    Ok("n=2,3 isomorphic to the grid".into())
}

fn lift_oracle(bundle: &ConstructionBundle, sets: &[BTreeSet<VertexId>]) -> Result<bool, String> {
    let sup = lib(bundle.traceable_supergraph())?;
    Ok(model_oracle(&Graph::complete(sets.len()), &sup, sets, false))
}

fn c9_lifting() -> Outcome {
    let g = lib(build_g(2))?;
    let keep: Vec<VertexId> = (0..g.base_vertex_count).collect();
    let b2 = lib(g.graph.induced_subgraph(&keep))?;
    let found = lib(find_models(&SubdividedCliqueModel::pattern(3), &b2, ModelKind::Induced, usize::MAX, None))?;
    ensure(!found.models.is_empty(), || "no induced model found".into())?;
    for m in &found.models {
        let sm = lib(SubdividedCliqueModel::new(3, m.clone(), &g))?;
        let norm = lib(normalize_model(&sm, &g))?;
        let lift = lib(lift_to_bprime(norm.model(), &g))?;
        ensure(lift.valid, || format!("lift invalid for {}", m.to_json()))?;
        ensure(lift_oracle(&g, &lift.branch_sets)?, || format!("lift fails the oracle for {}", m.to_json()))?;
    }
    Ok(format!("{n}/{n} models lift to K3 in B'(2)", n = found.models.len()))
}

fn c10_no_k6() -> Outcome {
    let g = lib(build_g(2))?;
    let out = lib(find_model(&SubdividedCliqueModel::pattern(6), &g.graph, ModelKind::Induced, Some(100_000_000)))?;
    match out {
        SearchOutcome::Found { witness } => Err(format!("Found {}", witness.to_json())),
        SearchOutcome::Absent => Ok("Absent".into()),
        SearchOutcome::Unknown { spent } => Ok(format!("Unknown after {spent} nodes (not Found)")),
    }
}

fn c11_td() -> Outcome {
    let s = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
    let p4 = Graph::path(4);
    let r = lib(verify_td(&p4, &TreeDecomposition::trivial(&p4)))?;
    ensure((r.valid, r.width, r.adhesion) == (true, Some(3), Some(0)), || format!("trivial: {r:?}"))?;
    let r = lib(verify_td(&p4, &TreeDecomposition::new(Graph::path(3), [vec![0, 1], vec![1, 2], vec![2, 3]])))?;
    ensure((r.valid, r.width, r.adhesion) == (true, Some(1), Some(1)), || format!("path bags: {r:?}"))?;
    let r = lib(verify_td(&p4, &TreeDecomposition::new(Graph::path(2), [vec![0, 1], vec![2, 3]])))?;
    ensure(!r.valid && r.violation.as_deref() == Some("uncovered edge 1-2"), || format!("split bags: {r:?}"))?;
    let c4 = Graph::cycle(4);
    let td = TreeDecomposition::new(Graph::path(2), [vec![0, 1, 3], vec![1, 2, 3]]);
    for x in 0..2 {
        ensure(lib(torso(&c4, &td, x))?.graph == Graph::complete(3), || "C4 torso is not a triangle".into())?;
    }
    let star = lib(Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]))?;
    let td = TreeDecomposition::new(Graph::path(3), [vec![0, 1], vec![0, 2], vec![0, 3]]);
    for x in 0..3 {
        let t = lib(torso(&star, &td, x))?;
        ensure(t.graph == Graph::path(2), || "star torso gained an edge".into())?;
    }
    let tri = Graph::complete(3);
    let d = lib(clique_sum(&tri, &[0, 1], &tri, &[0, 1], &[]))?.graph;
    ensure((d.vertex_count(), d.edge_count()) == (4, 5), || "diamond size".into())?;
    let sq = lib(clique_sum(&tri, &[0, 1], &tri, &[0, 1], &[(0, 1)]))?.graph;
    ensure(lib(are_isomorphic(&sq, &c4, false))?, || "glued triangles minus the edge are not C4".into())?;
    let p3 = lib(clique_sum(&Graph::complete(2), &[1], &Graph::complete(2), &[0], &[]))?.graph;
    ensure(p3 == Graph::path(3), || "K2 + K2 is not P3".into())?;
    let p5 = Graph::path(5);
    let common = lib(helly_common_node(&p5, &[s(&[0, 1, 2]), s(&[1, 2, 3]), s(&[2, 3, 4])]))?;
    ensure(common == HellyOutcome::Common { node: 2 }, || format!("{common:?}"))?;

    let forest = lib(trees(8))?;
    let counts: Vec<usize> = forest.iter().map(Vec::len).collect();
    ensure(counts == [1, 1, 1, 2, 3, 6, 11, 23], || format!("tree counts {counts:?}"))?;
    let mut triples = 0usize;
    for t in forest.concat() {
        let n = t.vertex_count();
        let subtrees: Vec<BTreeSet<VertexId>> = (1u32..1 << n)
            .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<BTreeSet<_>>())
            .filter(|set| connected_within(&t, set))
            .collect();
        for i in 0..subtrees.len() {
            for j in i..subtrees.len() {
                for k in j..subtrees.len() {
                    triples += 1;
                    let trio = [&subtrees[i], &subtrees[j], &subtrees[k]];
                    let pairwise = (0..3).all(|a| (a + 1..3).all(|b| !trio[a].is_disjoint(trio[b])));
                    let list = trio.map(Clone::clone);
                    match lib(helly_common_node(&t, &list))? {
                        HellyOutcome::Common { node } => {
                            ensure(pairwise && trio.iter().all(|x| x.contains(&node)), || format!("bad common node {node}"))?
                        }
                        HellyOutcome::Disjoint { first, second } => {
                            ensure(!pairwise && trio[first].is_disjoint(trio[second]), || "bad disjoint pair".into())?
                        }
                    }
                }
            }
        }
    }
    Ok(format!("fixtures agree, {triples} subtree triples on {} trees", counts.iter().sum::<usize>()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 11] = [
        ("construction counts", c1_counts, 1),
        ("girth", c2_girth, 60),
        ("traceable supergraph contract", c3_bprime, 600),
        ("apex grids", c4_apex, 180),
        ("solver vs brute force", c5_oracle, 600),
        ("minor from a region representation", c6_extraction, 5),
        ("region representation search", c7_rig, 60),
        ("grid collapse", c8_collapse, 30),
        ("lifting", c9_lifting, 300),
        ("no induced K6 subdivision", c10_no_k6, 1800),
        ("tree decomposition utilities", c11_td, 60),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut result = run();
        let elapsed = t.elapsed();
        if result.is_ok() && elapsed > Duration::from_secs(*limit) {
            result = Err(format!("took {elapsed:.1?}, limit {limit} s"));
        }
        match &result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
