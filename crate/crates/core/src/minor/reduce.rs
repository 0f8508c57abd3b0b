//! Containment-preserving host reductions.
//!
//! Every reduced vertex remembers the original host vertices merged into
//! it, so a model of the reduced instance lifts back by taking unions.

use std::collections::BTreeSet;

use super::ModelKind;
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone)]
pub(super) struct Instance {
    pub graph: Graph,
    pub members: Vec<Vec<VertexId>>,
}

impl Instance {
    pub fn whole(host: &Graph) -> Self {
        Instance { graph: host.without_labels(), members: host.vertices().map(|v| vec![v]).collect() }
    }

    fn restrict(&self, keep: &[VertexId]) -> Self {
        Instance {
            graph: self.graph.induced_subgraph(keep).expect("kept vertices are in range").without_labels(),
            members: keep.iter().map(|&v| self.members[v].clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(super) struct PatternShape {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub biconnected: bool,
    pub min_degree: usize,
}

impl PatternShape {
    pub fn of(p: &Graph) -> Self {
        let connected = p.vertex_count() > 0 && p.is_connected();
        PatternShape {
            vertices: p.vertex_count(),
            edges: p.edge_count(),
            connected,
            biconnected: connected && p.vertex_count() >= 3 && blocks(p).len() == 1,
            min_degree: p.min_degree(),
        }
    }

    fn fits(&self, g: &Graph) -> bool {
        g.vertex_count() >= self.vertices && g.edge_count() >= self.edges
    }
}

/// Splits and shrinks the host into independent instances: the pattern is
/// contained in the host iff it is contained in one of them.
pub(super) fn prepare(shape: &PatternShape, host: &Graph, kind: ModelKind) -> Vec<Instance> {
    let mut work = vec![Instance::whole(host)];
    let mut out = Vec::new();
    while let Some(mut inst) = work.pop() {
        inst = match kind {
            ModelKind::Ordinary => shrink(inst, shape.min_degree),
            // contracting is not containment-preserving for induced minors
            ModelKind::Induced => shrink(inst, shape.min_degree.min(2)),
        };
        if !shape.fits(&inst.graph) {
            continue;
        }
        if shape.connected {
            let comps = inst.graph.components();
            if comps.len() > 1 {
                work.extend(comps.iter().rev().map(|c| inst.restrict(c)));
                continue;
            }
        }
        if kind == ModelKind::Ordinary && shape.biconnected {
            let bs = blocks(&inst.graph);
            if bs.len() > 1 {
                work.extend(bs.iter().rev().map(|b| inst.restrict(b)));
                continue;
            }
        }
        out.push(inst);
    }
    out
}

/// Deletes vertices of degree at most one (pattern minimum degree ≥ 2) and
/// contracts degree-two vertices into a neighbour (pattern minimum degree ≥ 3).
/// Deleting a leaf is sound for induced models too: a leaf can only be a
/// non-cut member of its neighbour's branch set.
fn shrink(inst: Instance, pattern_min_degree: usize) -> Instance {
    if pattern_min_degree < 2 {
        return inst;
    }
    let n = inst.graph.vertex_count();
    let mut adj: Vec<BTreeSet<VertexId>> = inst.graph.vertices().map(|v| inst.graph.neighbors(v).iter().copied().collect()).collect();
    let mut members = inst.members;
    let mut alive = vec![true; n];
    let mut queue: Vec<VertexId> = (0..n).collect();
    while let Some(x) = queue.pop() {
        if !alive[x] {
            continue;
        }
        let d = adj[x].len();
        if d <= 1 {
            alive[x] = false;
            for y in std::mem::take(&mut adj[x]) {
                adj[y].remove(&x);
                queue.push(y);
            }
        } else if d == 2 && pattern_min_degree >= 3 {
            let mut it = adj[x].iter().copied();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            alive[x] = false;
            adj[x].clear();
            adj[a].remove(&x);
            adj[b].remove(&x);
            adj[a].insert(b);
            adj[b].insert(a);
            let moved = std::mem::take(&mut members[x]);
            members[a].extend(moved);
            queue.push(a);
            queue.push(b);
        }
    }
    let keep: Vec<VertexId> = (0..n).filter(|&v| alive[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let edges: Vec<(VertexId, VertexId)> = keep
        .iter()
        .flat_map(|&v| adj[v].iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
        .map(|(v, w)| (index[v], index[w]))
        .collect();
    let mut kept_members: Vec<Vec<VertexId>> = keep.iter().map(|&v| std::mem::take(&mut members[v])).collect();
    for m in &mut kept_members {
        m.sort_unstable();
    }
    Instance { graph: Graph::from_edges(keep.len(), &edges).expect("valid edges"), members: kept_members }
}

/// Vertex sets of the biconnected components (bridges count as blocks);
/// isolated vertices form singleton blocks.
pub(crate) fn blocks(g: &Graph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();
    let mut out: Vec<Vec<VertexId>> = Vec::new();
    for root in g.vertices() {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root] = timer;
            timer += 1;
            out.push(vec![root]);
            continue;
        }
        // iterative DFS: (vertex, parent, next neighbour index)
        let mut stack: Vec<(VertexId, VertexId, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*i) {
                *i += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        out.push(block.into_iter().collect());
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_of_small_graphs() {
        // two triangles sharing vertex 2, plus a pendant edge and an isolated vertex
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)]).unwrap();
        assert_eq!(blocks(&g), vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5], vec![6]]);
        assert_eq!(blocks(&Graph::cycle(5)).len(), 1);
        assert_eq!(blocks(&Graph::path(4)).len(), 3);
    }

    #[test]
    fn shrink_suppresses_subdivisions() {
        let g = crate::ops::subdivide(&Graph::complete(4), 3).unwrap();
        let r = shrink(Instance::whole(&g), 3);
        assert_eq!(r.graph.vertex_count(), 4);
        assert_eq!(r.graph.edge_count(), 6);
        let mut all: Vec<VertexId> = r.members.concat();
        all.sort_unstable();
        assert_eq!(all, g.vertices().collect::<Vec<_>>());
    }

    #[test]
    fn prepare_splits_components_and_blocks() {
        let shape = PatternShape::of(&Graph::complete(3));
        assert!(shape.biconnected);
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (5, 6), (6, 7)]).unwrap();
        let parts = prepare(&shape, &g, ModelKind::Ordinary);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.graph.vertex_count() == 3));
    }
}
