//! Exact isomorphism test for small graphs (labels ignored).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Inputs above this size are refused unless forced.
pub const ISO_SIZE_GUARD: usize = 30;

/// Stable vertex colouring by iterated neighbourhood refinement, computed
/// jointly so that colours are comparable across both graphs.
fn refine(graphs: [&Graph; 2]) -> [Vec<usize>; 2] {
    let mut colors = graphs.map(|g| g.vertices().map(|v| g.degree(v)).collect::<Vec<_>>());
    loop {
        let mut palette: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let sigs: Vec<Vec<(usize, Vec<usize>)>> = (0..2)
            .map(|i| {
                graphs[i]
                    .vertices()
                    .map(|v| {
                        let mut ns: Vec<usize> = graphs[i].neighbors(v).iter().map(|&w| colors[i][w]).collect();
                        ns.sort_unstable();
                        (colors[i][v], ns)
                    })
                    .collect()
            })
            .collect();
        for s in sigs.iter().flatten() {
            let next = palette.len();
            palette.entry(s.clone()).or_insert(next);
        }
        let next: [Vec<usize>; 2] = [0, 1].map(|i| sigs[i].iter().map(|s| palette[s]).collect());
        let count = |c: &[Vec<usize>; 2]| {
            let mut all: Vec<usize> = c.iter().flatten().copied().collect();
            all.sort_unstable();
            all.dedup();
            all.len()
        };
        let stable = count(&next) == count(&colors);
        colors = next;
        if stable {
            return colors;
        }
    }
}

/// `true` iff an edge-preserving bijection exists. Refuses inputs with more
/// than [`ISO_SIZE_GUARD`] vertices unless `force` is set.
pub fn are_isomorphic(g1: &Graph, g2: &Graph, force: bool) -> Result<bool> {
    let n = g1.vertex_count();
    let largest = n.max(g2.vertex_count());
    if !force && largest > ISO_SIZE_GUARD {
        return Err(Error::SizeGuard { limit: ISO_SIZE_GUARD, actual: largest });
    }
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let [c1, c2] = refine([g1, g2]);
    let hist = |c: &[usize]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if hist(&c1) != hist(&c2) {
        return Ok(false);
    }
    // most constrained (rarest colour, then highest degree) first
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &c1 {
        *freq.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = g1.vertices().collect();
    order.sort_by_key(|&v| (freq[&c1[v]], std::cmp::Reverse(g1.degree(v)), v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(g1, g2, &c1, &c2, &order, 0, &mut map, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g1: &Graph,
    g2: &Graph,
    c1: &[usize],
    c2: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in g2.vertices() {
        if used[w] || c2[w] != c1[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| g1.has_edge(u, v) == g2.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g1, g2, c1, c2, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// One representative per isomorphism class of connected graphs on
/// `1..=max_n` vertices, grouped by order. Each class on `n` vertices arises
/// by joining a new vertex to some non-empty subset of a graph on `n − 1`.
pub fn connected_graphs(max_n: usize) -> Result<Vec<Vec<Graph>>> {
    grow(max_n, |n| (1u32..1 << n).collect())
}

/// One representative per isomorphism class of trees on `1..=max_n` nodes.
pub fn trees(max_n: usize) -> Result<Vec<Vec<Graph>>> {
    grow(max_n, |n| (0..n).map(|v| 1u32 << v).collect())
}

fn grow(max_n: usize, attachments: impl Fn(usize) -> Vec<u32>) -> Result<Vec<Vec<Graph>>> {
    if max_n > ISO_SIZE_GUARD.min(31) {
        return Err(Error::SizeGuard { limit: ISO_SIZE_GUARD.min(31), actual: max_n });
    }
    let mut out: Vec<Vec<Graph>> = Vec::new();
    if max_n == 0 {
        return Ok(out);
    }
    out.push(vec![Graph::empty(1)]);
    for n in 2..=max_n {
        let mut classes: BTreeMap<Vec<(usize, Vec<usize>)>, Vec<Graph>> = BTreeMap::new();
        let mut level = Vec::new();
        for g in &out[n - 2] {
            for mask in attachments(n - 1) {
                let mut edges: Vec<(usize, usize)> = g.edges().collect();
                edges.extend((0..n - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, n - 1)));
                let h = Graph::from_edges(n, &edges)?;
                let bucket = classes.entry(degree_profile(&h)).or_default();
                let mut seen = false;
                for other in bucket.iter() {
                    if are_isomorphic(&h, other, false)? {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    bucket.push(h.clone());
                    level.push(h);
                }
            }
        }
        out.push(level);
    }
    Ok(out)
}

fn degree_profile(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    let mut p: Vec<(usize, Vec<usize>)> = g
        .vertices()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    p.sort_unstable();
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::subdivide;
    use proptest::prelude::*;

    // Oracle: try every bijection.
    fn iso_brute(g1: &Graph, g2: &Graph) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        g1.vertex_count() == g2.vertex_count()
            && g1.edge_count() == g2.edge_count()
            && perms(g1.vertex_count())
                .iter()
                .any(|p| g1.edges().all(|(u, v)| g2.has_edge(p[u], p[v])))
    }

    #[test]
    fn class_counts() {
        // connected graphs and trees by order
        let counts = |v: Vec<Vec<Graph>>| v.iter().map(Vec::len).collect::<Vec<_>>();
        assert_eq!(counts(connected_graphs(6).unwrap()), vec![1, 1, 2, 6, 21, 112]);
        assert_eq!(counts(trees(8).unwrap()), vec![1, 1, 1, 2, 3, 6, 11, 23]);
        assert!(connected_graphs(6).unwrap().concat().iter().all(Graph::is_connected));
    }

    #[test]
    fn spec_examples() {
        let k3s = subdivide(&Graph::complete(3), 1).unwrap();
        assert!(are_isomorphic(&Graph::cycle(6), &k3s, false).unwrap());
        assert!(!are_isomorphic(&Graph::complete(3), &Graph::path(3), false).unwrap());
    }

    #[test]
    fn apex_grid_two_is_the_wheel() {
        let a2 = crate::constructions::apex_grid(2).unwrap();
        assert!(iso_brute(&a2, &Graph::wheel(4)));
        assert!(are_isomorphic(&a2, &Graph::wheel(4), false).unwrap());
    }

    #[test]
    fn guard_is_a_refusal() {
        let big = Graph::cycle(31);
        assert!(matches!(are_isomorphic(&big, &big, false), Err(Error::SizeGuard { .. })));
        assert!(are_isomorphic(&big, &big, true).unwrap());
    }

    #[test]
    fn regular_graphs_need_backtracking() {
        // C6 vs two triangles: same degree sequence, not isomorphic
        let two_tri = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!are_isomorphic(&Graph::cycle(6), &two_tri, false).unwrap());
        // prism vs K3,3
        let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        let k33 = Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert!(!are_isomorphic(&prism, &k33, false).unwrap());
        assert_eq!(iso_brute(&prism, &k33), false);
    }

    proptest::proptest! {
        #[test]
        fn agrees_with_brute_force(
            e1 in proptest::collection::vec((0usize..6, 0usize..6), 0..10),
            e2 in proptest::collection::vec((0usize..6, 0usize..6), 0..10),
            perm in proptest::sample::subsequence((0usize..6).collect::<Vec<_>>(), 6).prop_shuffle(),
        ) {
            let mk = |es: &[(usize, usize)]| {
                let mut b = crate::graph::GraphBuilder::with_vertices(6);
                for &(u, v) in es {
                    if u != v { b.add_edge(u, v).unwrap(); }
                }
                b.build()
            };
            let g1 = mk(&e1);
            let g2 = mk(&e2);
            prop_assert_eq!(are_isomorphic(&g1, &g2, false).unwrap(), iso_brute(&g1, &g2));
            let relabelled: Vec<(usize, usize)> = g1.edges().map(|(u, v)| (perm[u], perm[v])).collect();
            prop_assert!(are_isomorphic(&g1, &mk(&relabelled), false).unwrap());
        }
    }
}
