//! Graph primitives on the block graph and walks on the grid.

mod dijkstra;
mod grid_path;
mod mst;
mod stc;
mod steiner;

use std::collections::BTreeSet;

pub use dijkstra::{dijkstra, dijkstra_from_set, ShortestPaths};
pub use grid_path::{grid_distances, grid_shortest_path};
pub use mst::kruskal_mst;
pub use stc::{circumnavigate, circumnavigation_cycle};
pub use steiner::steiner_tree;

use crate::hypergraph::{HvId, HyperGraph};
use crate::instance::{Cell, GridMap};

/// A tree of hypervertices. Edges are stored as `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperTree {
    pub vertices: BTreeSet<HvId>,
    pub edges: BTreeSet<(HvId, HvId)>,
    pub anchor: Option<HvId>,
    pub total_cost: f64,
}

impl HyperTree {
    pub fn singleton(v: HvId) -> Self {
        Self {
            vertices: BTreeSet::from([v]),
            edges: BTreeSet::new(),
            anchor: None,
            total_cost: 0.0,
        }
    }

    pub fn from_edges(h: &HyperGraph, vertices: BTreeSet<HvId>, edges: BTreeSet<(HvId, HvId)>) -> Self {
        let total_cost = edges
            .iter()
            .map(|&(a, b)| h.edge_cost(a, b).expect("tree edges are graph edges"))
            .sum();
        Self { vertices, edges, anchor: None, total_cost }
    }

    pub fn degree(&self, v: HvId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Connected and acyclic over `vertices`, with every edge present in `h`.
    pub fn is_valid_tree(&self, h: &HyperGraph) -> bool {
        if self.vertices.is_empty() || self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        let edges_ok = self.edges.iter().all(|&(a, b)| {
            a < b && self.vertices.contains(&a) && self.vertices.contains(&b) && h.edge_between(a, b).is_some()
        });
        edges_ok && self.spans_connected()
    }

    fn spans_connected(&self) -> bool {
        let first = *self.vertices.iter().next().expect("non-empty");
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(u) = stack.pop() {
            for &(a, b) in &self.edges {
                let next = if a == u { b } else if b == u { a } else { continue };
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

pub(crate) fn edge_key(a: HvId, b: HvId) -> (HvId, HvId) {
    if a < b { (a, b) } else { (b, a) }
}

/// An ordered sequence of grid cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridWalk {
    pub cells: Vec<Cell>,
}

impl GridWalk {
    pub fn new(cells: Vec<Cell>) -> Self {
        Self { cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn first(&self) -> Option<Cell> {
        self.cells.first().copied()
    }

    pub fn last(&self) -> Option<Cell> {
        self.cells.last().copied()
    }

    /// Index of the first step that leaves the map's free cells or jumps
    /// between non-adjacent cells.
    pub fn first_invalid_step(&self, map: &GridMap) -> Option<usize> {
        self.cells.iter().enumerate().find_map(|(i, &c)| {
            let bad = !map.is_free(c) || (i > 0 && !self.cells[i - 1].is_adjacent(c));
            bad.then_some(i)
        })
    }

    pub fn is_valid(&self, map: &GridMap) -> bool {
        self.first_invalid_step(map).is_none()
    }

    /// Travel cost: the step count, or the summed cost of every entered cell
    /// when `time_weighted`.
    pub fn cost(&self, map: &GridMap, time_weighted: bool) -> f64 {
        if time_weighted {
            self.cells.iter().skip(1).map(|&c| map.cost(c)).sum()
        } else {
            self.len().saturating_sub(1) as f64
        }
    }
}
