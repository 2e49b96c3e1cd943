//! Contraction of the grid into a graph of fully free 2×2 blocks.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::instance::{Cell, GridMap, Zone};

/// Index of a hypervertex. Ids follow row-major order of the free blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HvId(pub usize);

impl HvId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl std::fmt::Display for HvId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "h{}", self.0)
    }
}

/// Block sides, clockwise from north.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    North,
    East,
    South,
    West,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::North, Side::East, Side::South, Side::West];

    pub fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperEdge {
    /// Always `a < b`.
    pub a: HvId,
    pub b: HvId,
    pub cost: f64,
}

#[derive(Clone, Debug)]
pub struct HyperGraph {
    blocks_wide: usize,
    blocks_high: usize,
    block_of: Vec<(usize, usize)>,
    /// Clockwise from the top-left: TL, TR, BR, BL.
    hv_cells: Vec<[Cell; 4]>,
    hv_cost: Vec<f64>,
    edges: Vec<HyperEdge>,
    /// Per hypervertex: (neighbour, edge index), sorted by neighbour id.
    adjacency: Vec<Vec<(HvId, usize)>>,
    block_to_hv: Vec<Option<HvId>>,
}

impl HyperGraph {
    pub fn hv_count(&self) -> usize {
        self.hv_cells.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = HvId> {
        (0..self.hv_count()).map(HvId)
    }

    pub fn cells(&self, hv: HvId) -> &[Cell; 4] {
        &self.hv_cells[hv.0]
    }

    pub fn cost(&self, hv: HvId) -> f64 {
        self.hv_cost[hv.0]
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &HyperEdge {
        &self.edges[idx]
    }

    pub fn neighbors(&self, hv: HvId) -> &[(HvId, usize)] {
        &self.adjacency[hv.0]
    }

    pub fn edge_between(&self, a: HvId, b: HvId) -> Option<usize> {
        self.adjacency[a.0].iter().find(|(n, _)| *n == b).map(|&(_, e)| e)
    }

    pub fn edge_cost(&self, a: HvId, b: HvId) -> Option<f64> {
        self.edge_between(a, b).map(|e| self.edges[e].cost)
    }

    /// Replaces the cost of the edge between `a` and `b`. Derived costs no
    /// longer hold afterwards; meant for exercising graph routines on
    /// hand-picked weights.
    #[doc(hidden)]
    pub fn set_edge_cost(&mut self, a: HvId, b: HvId, cost: f64) {
        let e = self.edge_between(a, b).expect("no such edge");
        self.edges[e].cost = cost;
    }

    /// The hypervertex owning a grid cell, if the cell is free.
    pub fn hv_of(&self, c: Cell) -> Option<HvId> {
        let (bx, by) = (c.x / 2, c.y / 2);
        if bx >= self.blocks_wide || by >= self.blocks_high {
            return None;
        }
        self.block_to_hv[by * self.blocks_wide + bx]
    }

    /// Block coordinates (column, row) in the block lattice.
    pub fn block(&self, hv: HvId) -> (usize, usize) {
        self.block_of[hv.0]
    }

    pub fn neighbor_on(&self, hv: HvId, side: Side) -> Option<HvId> {
        let (bx, by) = self.block(hv);
        let (nx, ny) = match side {
            Side::North => (Some(bx), by.checked_sub(1)),
            Side::East => (Some(bx + 1), Some(by)),
            Side::South => (Some(bx), Some(by + 1)),
            Side::West => (bx.checked_sub(1), Some(by)),
        };
        let (nx, ny) = (nx?, ny?);
        if nx >= self.blocks_wide || ny >= self.blocks_high {
            return None;
        }
        self.block_to_hv[ny * self.blocks_wide + nx]
    }

    /// Side of `a` that faces the adjacent block `b`.
    pub fn side_towards(&self, a: HvId, b: HvId) -> Option<Side> {
        Side::ALL.into_iter().find(|&s| self.neighbor_on(a, s) == Some(b))
    }

    /// Whether `set` induces a connected subgraph. Empty sets are not connected.
    pub fn is_connected_subset(&self, set: &BTreeSet<HvId>) -> bool {
        let Some(&first) = set.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([first]);
        let mut queue = VecDeque::from([first]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in self.neighbors(u) {
                if set.contains(&v) && seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen.len() == set.len()
    }
}

/// Contracts every fully free 2×2 block into a hypervertex. A hypervertex
/// costs the mean of its four cells; an edge costs the mean of its endpoints.
pub fn build_hypergraph(map: &GridMap) -> HyperGraph {
    let (bw, bh) = (map.width() / 2, map.height() / 2);
    let mut block_to_hv = vec![None; bw * bh];
    let mut block_of = Vec::new();
    let mut hv_cells = Vec::new();
    let mut hv_cost = Vec::new();
    for by in 0..bh {
        for bx in 0..bw {
            let (x, y) = (2 * bx, 2 * by);
            let cells = [
                Cell::new(x, y),
                Cell::new(x + 1, y),
                Cell::new(x + 1, y + 1),
                Cell::new(x, y + 1),
            ];
            if cells.iter().all(|&c| map.is_free(c)) {
                block_to_hv[by * bw + bx] = Some(HvId(hv_cells.len()));
                block_of.push((bx, by));
                hv_cost.push(cells.iter().map(|&c| map.cost(c)).sum::<f64>() / 4.0);
                hv_cells.push(cells);
            }
        }
    }
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); hv_cells.len()];
    for (i, &(bx, by)) in block_of.iter().enumerate() {
        let right = (bx + 1 < bw).then(|| block_to_hv[by * bw + bx + 1]).flatten();
        let below = (by + 1 < bh).then(|| block_to_hv[(by + 1) * bw + bx]).flatten();
        for other in [right, below].into_iter().flatten() {
            let (a, b) = (HvId(i), other);
            let idx = edges.len();
            edges.push(HyperEdge { a, b, cost: (hv_cost[a.0] + hv_cost[b.0]) / 2.0 });
            adjacency[a.0].push((b, idx));
            adjacency[b.0].push((a, idx));
        }
    }
    // Rows are scanned in id order and the right neighbour precedes the one
    // below, so edges are already sorted by (a, b).
    for list in &mut adjacency {
        list.sort_by_key(|&(n, _)| n);
    }
    HyperGraph {
        blocks_wide: bw,
        blocks_high: bh,
        block_of,
        hv_cells,
        hv_cost,
        edges,
        adjacency,
        block_to_hv,
    }
}

/// Hypervertices holding at least one cell of `zone`.
pub fn zone_hypervertices(h: &HyperGraph, zone: &Zone) -> Result<BTreeSet<HvId>> {
    let set: BTreeSet<HvId> = zone.cells.iter().filter_map(|&c| h.hv_of(c)).collect();
    if set.is_empty() || !h.is_connected_subset(&set) {
        return Err(Error::ZoneFragmented(zone.id));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn open(w: usize, hgt: usize) -> HyperGraph {
        build_hypergraph(&GridMap::open(w, hgt).unwrap())
    }

    #[test]
    fn four_by_four_uniform() {
        let h = open(4, 4);
        assert_eq!(h.hv_count(), 4);
        assert_eq!(h.edges().len(), 4);
        assert!(h.ids().all(|u| h.cost(u) == 1.0));
        assert!(h.edges().iter().all(|e| e.cost == 1.0));
    }

    #[test]
    fn block_costs_are_means() {
        let mut cost = vec![1.0; 16];
        cost[0] = 0.8;
        cost[1] = 1.2;
        let map = GridMap::new(4, 4, vec![true; 16], cost).unwrap();
        let h = build_hypergraph(&map);
        assert!((h.cost(HvId(0)) - 1.0).abs() < 1e-12);
        for &(_, e) in h.neighbors(HvId(0)) {
            assert!((h.edge(e).cost - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn six_by_four_has_seven_edges() {
        // 3x2 block lattice: 2 horizontal edges per row, 3 vertical edges.
        let h = open(6, 4);
        assert_eq!(h.hv_count(), 6);
        assert_eq!(h.edges().len(), 7);
    }

    #[test]
    fn obstacles_drop_blocks_and_edges() {
        let mut free = vec![true; 16];
        for c in [(2, 0), (3, 0), (2, 1), (3, 1)] {
            free[c.1 * 4 + c.0] = false;
        }
        let map = GridMap::new(4, 4, free, vec![1.0; 16]).unwrap();
        let h = build_hypergraph(&map);
        assert_eq!(h.hv_count(), 3);
        assert_eq!(h.edges().len(), 2);
        assert_eq!(h.hv_of(Cell::new(3, 1)), None);
        assert_eq!(h.hv_of(Cell::new(3, 3)), Some(HvId(2)));
    }

    #[test]
    fn zone_mapping() {
        let h = open(8, 4);
        let block = Zone::new(0, 1.0, [(2, 0), (3, 0), (2, 1), (3, 1)].map(|(x, y)| Cell::new(x, y)));
        assert_eq!(zone_hypervertices(&h, &block).unwrap(), BTreeSet::from([HvId(1)]));
        let straddle = Zone::new(1, 1.0, [Cell::new(1, 0), Cell::new(2, 0)]);
        assert_eq!(zone_hypervertices(&h, &straddle).unwrap(), BTreeSet::from([HvId(0), HvId(1)]));
        // 4x2 rectangle offset by one column overlaps blocks 0, 1 and 2.
        let offset = Zone::new(2, 1.0, (1..5).flat_map(|x| (0..2).map(move |y| Cell::new(x, y))));
        assert_eq!(
            zone_hypervertices(&h, &offset).unwrap(),
            BTreeSet::from([HvId(0), HvId(1), HvId(2)])
        );
    }

    #[test]
    fn cell_to_hv_is_total_on_free_cells() {
        let h = open(6, 6);
        let mut seen = 0;
        for u in h.ids() {
            for &c in h.cells(u) {
                assert_eq!(h.hv_of(c), Some(u));
                seen += 1;
            }
        }
        assert_eq!(seen, 36);
    }
}
