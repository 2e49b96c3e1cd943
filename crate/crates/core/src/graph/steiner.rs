use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use super::dijkstra::{relax_all, HeapEntry, ShortestPaths};
use super::{kruskal_mst, HyperTree};
use crate::hypergraph::{HvId, HyperGraph};

/// Shortest-path heuristic for the Steiner tree problem.
///
/// Grows a tree from the smallest terminal, repeatedly attaching the nearest
/// unconnected terminal along its shortest path to the tree. The result is
/// then replaced by the MST of its own vertex set and non-terminal leaves are
/// pruned. Both steps can only lower the cost, so the 2-approximation bound
/// of the growth phase carries over.
pub fn steiner_tree(h: &HyperGraph, terminals: &BTreeSet<HvId>) -> HyperTree {
    let Some(&root) = terminals.iter().next() else {
        panic!("steiner_tree needs at least one terminal");
    };
    let n = h.hv_count();
    let mut in_tree = vec![false; n];
    in_tree[root.0] = true;
    let mut vertices = BTreeSet::from([root]);
    let mut sp = ShortestPaths { dist: vec![f64::INFINITY; n], parent: vec![None; n] };
    sp.dist[root.0] = 0.0;
    let mut heap = BinaryHeap::from([HeapEntry(0.0, root)]);
    relax_all(h, &mut sp, &mut heap);

    let mut pending: BTreeSet<HvId> = terminals.iter().copied().filter(|&t| t != root).collect();
    while !pending.is_empty() {
        let next = *pending
            .iter()
            .min_by(|a, b| sp.dist[a.0].total_cmp(&sp.dist[b.0]).then(a.cmp(b)))
            .expect("pending is non-empty");
        assert!(sp.dist[next.0].is_finite(), "terminal {next} unreachable from the tree");
        let mut path = Vec::new();
        let mut cur = next;
        while !in_tree[cur.0] {
            path.push(cur);
            cur = sp.parent[cur.0].expect("path leads back into the tree");
        }
        for v in path {
            in_tree[v.0] = true;
            vertices.insert(v);
            pending.remove(&v);
            sp.dist[v.0] = 0.0;
            sp.parent[v.0] = None;
            heap.push(HeapEntry(0.0, v));
        }
        relax_all(h, &mut sp, &mut heap);
    }

    let mst = kruskal_mst(h, &vertices).expect("grown tree is connected");
    prune_non_terminal_leaves(h, mst, terminals)
}

fn prune_non_terminal_leaves(h: &HyperGraph, tree: HyperTree, terminals: &BTreeSet<HvId>) -> HyperTree {
    let HyperTree { mut vertices, mut edges, .. } = tree;
    let mut degree: BTreeMap<HvId, usize> = vertices.iter().map(|&v| (v, 0)).collect();
    for &(a, b) in &edges {
        *degree.get_mut(&a).expect("endpoint") += 1;
        *degree.get_mut(&b).expect("endpoint") += 1;
    }
    let mut leaves: Vec<HvId> = degree
        .iter()
        .filter(|&(v, &d)| d <= 1 && !terminals.contains(v))
        .map(|(&v, _)| v)
        .collect();
    while let Some(leaf) = leaves.pop() {
        if vertices.len() == 1 || !vertices.contains(&leaf) {
            continue;
        }
        vertices.remove(&leaf);
        let incident: Vec<(HvId, HvId)> = edges.iter().copied().filter(|&(a, b)| a == leaf || b == leaf).collect();
        for (a, b) in incident {
            edges.remove(&(a, b));
            let other = if a == leaf { b } else { a };
            let d = degree.get_mut(&other).expect("endpoint");
            *d -= 1;
            if *d <= 1 && !terminals.contains(&other) {
                leaves.push(other);
            }
        }
    }
    HyperTree::from_edges(h, vertices, edges)
}
