//! The verification battery behind `rigkit paper-suite`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::constructions::{
    apex_grid, build_bn, build_bn_prime, build_g, build_gg, check_bprime_contract, collapse_copies_and_stretches,
    pd_grid,
};
use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::iso::{are_isomorphic, connected_graphs, trees};
use crate::lifting::{check_claims, lift_to_bprime, normalize_model, SubdividedCliqueModel};
use crate::minor::{
    brute_force_contains, find_model, find_model_with, find_models, verify_model, MinorModel, ModelKind,
    SearchConfig, SearchOutcome,
};
use crate::ops::{girth, subdivide, GirthValue};
use crate::rig::{canonical_subdivision_rep, extract_minor_from_rig, find_rig_representation};
use crate::td::{clique_sum, helly_common_node, torso, verify_td, HellyOutcome, TreeDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// Reduced sizes and budgets; seconds.
    Fast,
    /// The stated sizes and budgets; minutes.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

pub const CRITERIA: [&str; 11] = [
    "construction counts",
    "girth",
    "traceable supergraph contract",
    "apex grids",
    "solver vs brute force",
    "minor from a region representation",
    "region representation search",
    "grid collapse",
    "lifting",
    "no induced K6 subdivision",
    "tree decomposition utilities",
];

/// Runs one criterion (1-based).
pub fn run_criterion(id: u8, level: Level) -> CriterionOutcome {
    let full = level == Level::Full;
    let res = match id {
        1 => counts(),
        2 => girths(full),
        3 => bprime(full),
        4 => apex_grids(full),
        5 => solver_oracle(full),
        6 => rig_extraction(),
        7 => rig_search(),
        8 => collapse(full),
        9 => lifting(full),
        10 => no_k6_subdivision(full),
        11 => td_utilities(full),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
    let title = CRITERIA.get(usize::from(id).wrapping_sub(1)).copied().unwrap_or("unknown").to_string();
    CriterionOutcome { id, title, passed, detail }
}

pub fn run_suite(level: Level) -> Vec<CriterionOutcome> {
    (1..=CRITERIA.len() as u8).map(|id| run_criterion(id, level)).collect()
}

/// Fixed-width table, one row per criterion.
pub fn render_table(rows: &[CriterionOutcome]) -> String {
    let mut out = String::new();
    for r in rows {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{:>2}  {mark}  {:<36} {}\n", r.id, r.title, r.detail));
    }
    let passed = rows.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} passed\n", rows.len()));
    out
}

type Check = Result<(bool, String)>;

fn counts() -> Check {
    let bn = build_bn(1, 2)?;
    let g = build_g(2)?;
    let mut ok = (bn.vertex_count(), bn.edge_count()) == (26, 32) && (g.graph.vertex_count(), g.graph.edge_count()) == (130, 186);
    let mut detail = format!(
        "B(1,2) {}/{}, G(2) {}/{}",
        bn.vertex_count(),
        bn.edge_count(),
        g.graph.vertex_count(),
        g.graph.edge_count()
    );
    for gg in 2..=3 {
        let b = build_bn(gg, 2)?.vertex_count();
        let v = build_gg(gg, 2)?.graph.vertex_count();
        ok &= v == b * (1 + 2 * gg);
        detail.push_str(&format!(", G({gg},2) {v}"));
    }
    Ok((ok, detail))
}

fn girths(full: bool) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in if full { 2..=3 } else { 2..=2 } {
        let v = girth(&build_g(n)?.graph);
        ok &= v == GirthValue::Finite(5);
        parts.push(format!("G({n})={v}"));
    }
    for g in 1..=3 {
        let v = girth(&build_bn(g, 2)?);
        ok &= v == GirthValue::Finite(3 * (g + 1));
        parts.push(format!("B({g},2)={v}"));
    }
    for g in if full { 5..=8 } else { 5..=5 } {
        let v = girth(&build_gg(g, 2)?.graph);
        ok &= v.at_least(g);
        parts.push(format!("G({g},2)={v}"));
    }
    Ok((ok, parts.join(" ")))
}

fn bprime(full: bool) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 2..=3 {
        let b = build_bn_prime(1, n)?;
        let verdict = check_bprime_contract(&b, &build_bn(1, n)?);
        ok &= verdict.is_ok();
        parts.push(format!("n={n} contract {}", if verdict.is_ok() { "ok" } else { "broken" }));
    }
    let sup = build_bn_prime(1, 2)?.traceable_supergraph()?;
    let budget = if full { 100_000_000 } else { 1_000_000 };
    let out = find_model(&Graph::complete(6), &sup, ModelKind::Ordinary, Some(budget))?;
    ok &= if full { out.is_absent() } else { !out.is_found() };
    parts.push(format!("K6 in B'(1,2) {}", out.label()));
    Ok((ok, parts.join(", ")))
}

fn apex_grids(full: bool) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in if full { 2..=4 } else { 2..=3 } {
        let out = find_model(&Graph::complete(6), &apex_grid(n)?, ModelKind::Ordinary, None)?;
        ok &= out.is_absent();
        parts.push(format!("K6/A{n} {}", out.label()));
    }
    let out = find_model(&Graph::complete(5), &apex_grid(3)?, ModelKind::Ordinary, None)?;
    ok &= out.is_found();
    parts.push(format!("K5/A3 {}", out.label()));
    Ok((ok, parts.join(", ")))
}

fn solver_oracle(full: bool) -> Check {
    let hosts = connected_graphs(if full { 7 } else { 6 })?.concat();
    let patterns = [Graph::complete(3), Graph::complete(4), Graph::cycle(4), Graph::path(4), Graph::complete(5)];
    let mut total = 0;
    let mut disagree = 0;
    for h in &hosts {
        for p in &patterns {
            for kind in [ModelKind::Ordinary, ModelKind::Induced] {
                total += 1;
                let expected = brute_force_contains(p, h, kind)?;
                let got = find_model(p, h, kind, None)?;
                if got.is_found() != expected || (!expected && !got.is_absent()) {
                    disagree += 1;
                }
            }
        }
    }
    Ok((disagree == 0, format!("{} hosts, {} agree of {total}", hosts.len(), total - disagree)))
}

fn rig_extraction() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in [3, 4] {
        let h = Graph::complete(s);
        let g = subdivide(&h, 1)?;
        let rep = canonical_subdivision_rep(&g);
        let m = MinorModel::identity(&g, ModelKind::Induced);
        let out = extract_minor_from_rig(&h, &rep, &m)?;
        let valid = verify_model(&h, &rep.host, &out)?.valid;
        ok &= valid;
        parts.push(format!("K{s} over {} vertices {}", rep.host.vertex_count(), if valid { "valid" } else { "invalid" }));
    }
    Ok((ok, parts.join(", ")))
}

fn rig_search() -> Check {
    let c4 = Graph::cycle(4);
    let a = find_rig_representation(&c4, &Graph::path(10), None, None)?;
    let b = find_rig_representation(&c4, &subdivide(&c4, 1)?, None, None)?;
    Ok((a.is_absent() && b.is_found(), format!("C4/P10 {}, C4/C8 {}", a.label(), b.label())))
}

fn collapse(full: bool) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in if full { 2..=3 } else { 2..=2 } {
        let c = collapse_copies_and_stretches(&build_g(n)?)?;
        let iso = are_isomorphic(&c, &pd_grid(n)?, false)?;
        ok &= iso;
        parts.push(format!("n={n} {}", if iso { "isomorphic" } else { "not isomorphic" }));
    }
    Ok((ok, parts.join(", ")))
}

fn lifting(full: bool) -> Check {
    let g = build_g(2)?;
    let keep: Vec<VertexId> = (0..g.base_vertex_count).collect();
    let b2 = g.graph.induced_subgraph(&keep)?;
    let limit = if full { usize::MAX } else { 500 };
    let found = find_models(&SubdividedCliqueModel::pattern(3), &b2, ModelKind::Induced, limit, None)?;
    let mut lifted = 0;
    let mut claims = 0;
    for m in &found.models {
        let sm = SubdividedCliqueModel::new(3, m.clone(), &g)?;
        let norm = normalize_model(&sm, &g)?;
        if check_claims(norm.model(), &g)?.all_hold() {
            claims += 1;
        }
        if lift_to_bprime(norm.model(), &g)?.valid {
            lifted += 1;
        }
    }
    let n = found.models.len();
    Ok((n > 0 && lifted == n, format!("{lifted}/{n} models lift, claims hold for {claims}")))
}

fn no_k6_subdivision(full: bool) -> Check {
    let g = build_g(2)?;
    let budget = if full { 100_000_000 } else { 100_000 };
    let config = SearchConfig { budget: Some(budget), jobs: 1 };
    let out = find_model_with(&SubdividedCliqueModel::pattern(6), &g.graph, ModelKind::Induced, &config)?;
    let detail = match &out {
        SearchOutcome::Unknown { spent } => format!("Unknown after {spent} nodes"),
        other => other.label().to_string(),
    };
    Ok((!out.is_found(), detail))
}

fn td_utilities(full: bool) -> Check {
    let mut ok = true;
    let p4 = Graph::path(4);
    let r = verify_td(&p4, &TreeDecomposition::trivial(&p4))?;
    ok &= (r.valid, r.width, r.adhesion) == (true, Some(3), Some(0));
    let r = verify_td(&p4, &TreeDecomposition::new(Graph::path(3), [vec![0, 1], vec![1, 2], vec![2, 3]]))?;
    ok &= (r.valid, r.width, r.adhesion) == (true, Some(1), Some(1));
    let r = verify_td(&p4, &TreeDecomposition::new(Graph::path(2), [vec![0, 1], vec![2, 3]]))?;
    ok &= !r.valid && r.violation.is_some_and(|v| v.starts_with("uncovered edge"));
    let c4 = Graph::cycle(4);
    let td = TreeDecomposition::new(Graph::path(2), [vec![0, 1, 3], vec![1, 2, 3]]);
    ok &= (0..2).all(|x| torso(&c4, &td, x).is_ok_and(|t| t.graph == Graph::complete(3)));
    let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)])?;
    let td = TreeDecomposition::new(Graph::path(3), [vec![0, 1], vec![0, 2], vec![0, 3]]);
    ok &= (0..3).all(|x| torso(&star, &td, x).is_ok_and(|t| t.graph == star.induced_subgraph(&t.vertices).unwrap()));
    let tri = Graph::complete(3);
    let diamond = clique_sum(&tri, &[0, 1], &tri, &[0, 1], &[])?;
    ok &= (diamond.graph.vertex_count(), diamond.graph.edge_count()) == (4, 5);
    let square = clique_sum(&tri, &[0, 1], &tri, &[0, 1], &[(0, 1)])?;
    ok &= are_isomorphic(&square.graph, &c4, false)?;
    let fixtures_ok = ok;

    let (checked, helly_ok) = helly_exhaustive(if full { 8 } else { 6 })?;
    Ok((fixtures_ok && helly_ok, format!("fixtures {}, {checked} subtree triples", if fixtures_ok { "ok" } else { "wrong" })))
}

/// Checks `helly_common_node` on every unordered triple of subtrees of every
/// tree up to `max_n` nodes against bitmask intersections.
fn helly_exhaustive(max_n: usize) -> Result<(usize, bool)> {
    let mut checked = 0;
    for t in trees(max_n)?.concat() {
        let subtrees: Vec<BTreeSet<VertexId>> = (1u32..1 << t.vertex_count())
            .map(|mask| (0..t.vertex_count()).filter(|&v| mask >> v & 1 == 1).collect::<BTreeSet<_>>())
            .filter(|s| t.is_connected_set(s))
            .collect();
        let masks: Vec<u32> = subtrees.iter().map(|s| s.iter().fold(0, |m, &v| m | 1 << v)).collect();
        for i in 0..subtrees.len() {
            for j in i..subtrees.len() {
                for k in j..subtrees.len() {
                    checked += 1;
                    let (a, b, c) = (masks[i], masks[j], masks[k]);
                    let pairwise = a & b != 0 && a & c != 0 && b & c != 0;
                    let trio = [subtrees[i].clone(), subtrees[j].clone(), subtrees[k].clone()];
                    let right = match helly_common_node(&t, &trio)? {
                        HellyOutcome::Common { node } => pairwise && (a & b & c) >> node & 1 == 1,
                        HellyOutcome::Disjoint { first, second } => {
                            !pairwise && [a, b, c][first] & [a, b, c][second] == 0
                        }
                    };
                    if !right {
                        return Ok((checked, false));
                    }
                }
            }
        }
    }
    Ok((checked, true))
}
