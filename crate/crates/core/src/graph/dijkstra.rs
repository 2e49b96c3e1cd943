use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::hypergraph::{HvId, HyperGraph};

/// Shortest-path distances and predecessor links over hyperedge costs.
#[derive(Clone, Debug)]
pub struct ShortestPaths {
    pub dist: Vec<f64>,
    pub parent: Vec<Option<HvId>>,
}

impl ShortestPaths {
    /// Vertices from the nearest source to `target`, inclusive.
    pub fn path_to(&self, target: HvId) -> Vec<HvId> {
        let mut path = vec![target];
        let mut cur = target;
        while let Some(p) = self.parent[cur.0] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn distance(&self, v: HvId) -> f64 {
        self.dist[v.0]
    }
}

#[derive(PartialEq)]
pub(crate) struct HeapEntry(pub f64, pub HvId);

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed for a min-heap; ties pop the smaller id first.
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn dijkstra(h: &HyperGraph, source: HvId) -> ShortestPaths {
    dijkstra_from_set(h, [source])
}

/// Multi-source Dijkstra: `dist[v]` is the distance to the nearest source.
/// Equal-cost alternatives keep the predecessor with the smaller id.
pub fn dijkstra_from_set(h: &HyperGraph, sources: impl IntoIterator<Item = HvId>) -> ShortestPaths {
    let n = h.hv_count();
    let mut sp = ShortestPaths { dist: vec![f64::INFINITY; n], parent: vec![None; n] };
    let mut heap = BinaryHeap::new();
    for s in sources {
        sp.dist[s.0] = 0.0;
        heap.push(HeapEntry(0.0, s));
    }
    relax_all(h, &mut sp, &mut heap);
    sp
}

/// Runs the label-correcting loop until the heap drains. Entries whose label
/// has since improved are skipped.
pub(crate) fn relax_all(h: &HyperGraph, sp: &mut ShortestPaths, heap: &mut BinaryHeap<HeapEntry>) {
    while let Some(HeapEntry(d, u)) = heap.pop() {
        if d > sp.dist[u.0] {
            continue;
        }
        for &(v, e) in h.neighbors(u) {
            let cand = d + h.edge(e).cost;
            let cur = sp.dist[v.0];
            if cand < cur {
                sp.dist[v.0] = cand;
                sp.parent[v.0] = Some(u);
                heap.push(HeapEntry(cand, v));
            } else if cand == cur && sp.parent[v.0].is_some_and(|p| u < p) {
                sp.parent[v.0] = Some(u);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::build_hypergraph;
    use crate::instance::GridMap;

    #[test]
    fn unit_square() {
        let h = build_hypergraph(&GridMap::open(4, 4).unwrap());
        let sp = dijkstra(&h, HvId(0));
        assert_eq!(sp.dist, vec![0.0, 1.0, 1.0, 2.0]);
        assert_eq!(sp.distance(HvId(0)), 0.0);
        // Both two-edge routes tie; the predecessor with the smaller id wins.
        assert_eq!(sp.path_to(HvId(3)), vec![HvId(0), HvId(1), HvId(3)]);
    }

    #[test]
    fn cheap_edge_is_preferred() {
        let mut h = build_hypergraph(&GridMap::open(4, 4).unwrap());
        h.set_edge_cost(HvId(2), HvId(3), 0.9);
        let sp = dijkstra(&h, HvId(0));
        // 0-1-3 costs 2.0, 0-2-3 costs 1.9.
        assert!((sp.distance(HvId(3)) - 1.9).abs() < 1e-12);
        assert_eq!(sp.path_to(HvId(3)), vec![HvId(0), HvId(2), HvId(3)]);
    }

    #[test]
    fn multi_source_takes_nearest() {
        let h = build_hypergraph(&GridMap::open(10, 2).unwrap());
        let sp = dijkstra_from_set(&h, [HvId(0), HvId(4)]);
        assert_eq!(sp.dist, vec![0.0, 1.0, 2.0, 1.0, 0.0]);
        assert_eq!(sp.path_to(HvId(3)), vec![HvId(4), HvId(3)]);
    }
}
