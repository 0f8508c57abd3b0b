//! Naive containment oracle for tiny hosts.

use super::ModelKind;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest host accepted by [`brute_force_contains`].
pub const BRUTE_FORCE_GUARD: usize = 10;

/// Decides containment by trying every assignment of pairwise disjoint
/// connected vertex subsets to the pattern vertices.
pub fn brute_force_contains(pattern: &Graph, host: &Graph, kind: ModelKind) -> Result<bool> {
    let n = host.vertex_count();
    if n > BRUTE_FORCE_GUARD {
        return Err(Error::SizeGuard { limit: BRUTE_FORCE_GUARD, actual: n });
    }
    let k = pattern.vertex_count();
    if k == 0 {
        return Ok(true);
    }
    let nbr: Vec<u32> = host.vertices().map(|v| host.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    let connected = |set: u32| {
        let start = set.trailing_zeros();
        let mut reached = 1u32 << start;
        loop {
            let mut grown = reached;
            for v in 0..n {
                if reached >> v & 1 == 1 {
                    grown |= nbr[v] & set;
                }
            }
            if grown == reached {
                return reached == set;
            }
            reached = grown;
        }
    };
    let subsets: Vec<u32> = (1u32..1 << n).filter(|&s| connected(s)).collect();
    let closed_nbhd = |set: u32| (0..n).filter(|&v| set >> v & 1 == 1).fold(set, |m, v| m | nbr[v]);
    let mut chosen = Vec::with_capacity(k);
    Ok(extend(pattern, kind, &subsets, &closed_nbhd, 0, &mut chosen))
}

fn extend(
    pattern: &Graph,
    kind: ModelKind,
    subsets: &[u32],
    closed_nbhd: &dyn Fn(u32) -> u32,
    used: u32,
    chosen: &mut Vec<u32>,
) -> bool {
    let u = chosen.len();
    if u == pattern.vertex_count() {
        return true;
    }
    for &s in subsets {
        if s & used != 0 {
            continue;
        }
        let reach = closed_nbhd(s);
        let fits = chosen.iter().enumerate().all(|(w, &t)| {
            let touching = reach & t != 0;
            if pattern.has_edge(u, w) {
                touching
            } else {
                kind == ModelKind::Ordinary || !touching
            }
        });
        if fits {
            chosen.push(s);
            if extend(pattern, kind, subsets, closed_nbhd, used | s, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
