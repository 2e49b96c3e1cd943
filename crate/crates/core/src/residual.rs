//! Residual phase: cover what the priority walks missed with one Steiner
//! tree cycle, shared out in contiguous arcs.

use std::collections::BTreeSet;
use std::ops::Range;

use crate::assignment::Assignment;
use crate::error::Result;
use crate::graph::{circumnavigation_cycle, grid_distances, grid_shortest_path, steiner_tree, GridWalk, HyperTree};
use crate::hypergraph::{HvId, HyperGraph};
use crate::instance::{Cell, GridMap, Instance};
use crate::phase1::Phase1Plan;

/// The shared residual cycle and its allocation.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualPlan {
    pub steiner: HyperTree,
    /// One lap around `steiner` starting at the origin, without the closing
    /// repeat; every cell of the tree's blocks appears exactly once.
    pub cycle: GridWalk,
    pub split: Split,
}

/// Per-robot contiguous ranges of cycle indices, the walks leading to them,
/// and the resulting total costs `C1 + C2` (plus the way home on closed
/// tours).
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub arcs: Vec<Range<usize>>,
    /// Empty for robots with an empty arc.
    pub transfers: Vec<GridWalk>,
    pub costs: Vec<f64>,
}

impl Split {
    pub fn max_cost(&self) -> f64 {
        self.costs.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FullPlan {
    pub paths: Vec<GridWalk>,
    /// Index into each path where the residual phase begins.
    pub phase_boundary: Vec<usize>,
    pub assignment: Assignment,
    pub instance_digest: String,
}

/// Hypervertices no priority walk fully covered.
pub fn residual_set(h: &HyperGraph, phase1: &[Phase1Plan]) -> BTreeSet<HvId> {
    let covered: BTreeSet<HvId> = phase1.iter().flat_map(|p| p.covered_hvs.iter().copied()).collect();
    h.ids().filter(|u| !covered.contains(u)).collect()
}

/// Team sizes up to which feasibility of a bound is decided exactly.
const EXACT_ROBOTS: usize = 12;

/// Cost model shared by the split search and its checks.
struct SplitCosts<'a> {
    n: usize,
    base: &'a [f64],
    /// `to_cycle[i][p]`: travel from robot i's phase-1 end to cycle cell p.
    to_cycle: Vec<Vec<f64>>,
    /// `prefix[t]`: cost of walking the cycle from index 0 to index t.
    prefix: Vec<f64>,
    /// Closed tours: `home[i][p]` is travel from cycle cell p back home, and
    /// `idle_home[i]` the way home straight from the phase-1 end.
    home: Option<(Vec<Vec<f64>>, Vec<f64>)>,
}

impl SplitCosts<'_> {
    /// Total for robot `i` when it takes `[p, q)`; `p == q` means idle.
    fn total(&self, i: usize, p: usize, q: usize) -> f64 {
        if p == q {
            return self.base[i] + self.home.as_ref().map_or(0.0, |(_, idle)| idle[i]);
        }
        let back = self.home.as_ref().map_or(0.0, |(h, _)| h[i][q - 1]);
        self.base[i] + self.to_cycle[i][p] + self.prefix[q - 1] - self.prefix[p] + back
    }

    /// Largest `q > p` with `total(i, p, q) <= bound`.
    fn reach(&self, i: usize, p: usize, bound: f64) -> Option<usize> {
        if self.total(i, p, p + 1) > bound && self.home.is_none() {
            return None;
        }
        if self.home.is_none() {
            // Without the way home the total grows with q.
            let budget = bound - self.base[i] - self.to_cycle[i][p] + self.prefix[p];
            return Some(p + self.prefix[p..].partition_point(|&c| c <= budget));
        }
        (p + 1..=self.n).rev().find(|&q| self.total(i, p, q) <= bound)
    }

    fn costs_of(&self, arcs: &[Range<usize>]) -> Vec<f64> {
        arcs.iter().enumerate().map(|(i, a)| self.total(i, a.start, a.end)).collect()
    }

    /// Robots in the given order each take the longest affordable arc.
    fn ordered_greedy(&self, order: &[usize], bound: f64) -> Option<Vec<Range<usize>>> {
        let mut arcs = vec![0..0; self.base.len()];
        let mut p = 0;
        for &i in order {
            if p == self.n {
                break;
            }
            if let Some(q) = self.reach(i, p, bound) {
                arcs[i] = p..q;
                p = q;
            }
        }
        (p == self.n).then_some(arcs)
    }

    /// At each point the unused robot reaching furthest takes over.
    fn farthest_greedy(&self, bound: f64) -> Option<Vec<Range<usize>>> {
        let mut arcs = vec![0..0; self.base.len()];
        let mut used = vec![false; self.base.len()];
        let mut p = 0;
        while p < self.n {
            let (i, q) = (0..self.base.len())
                .filter(|&i| !used[i])
                .filter_map(|i| self.reach(i, p, bound).map(|q| (i, q)))
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))?;
            used[i] = true;
            arcs[i] = p..q;
            p = q;
        }
        Some(arcs)
    }

    /// Exact check over robot subsets: `best[mask]` is the furthest cycle
    /// index the robots in `mask` can cover from the origin. Starting later
    /// on the cycle never makes an arc dearer, so the furthest point
    /// dominates every other way of covering the same prefix.
    fn subset_search(&self, bound: f64) -> Option<Vec<Range<usize>>> {
        let k = self.base.len();
        let full = (1usize << k) - 1;
        let mut best: Vec<Option<usize>> = vec![None; 1 << k];
        let mut from: Vec<(usize, usize)> = vec![(0, 0); 1 << k];
        best[0] = Some(0);
        for mask in 0..=full {
            let Some(p) = best[mask] else { continue };
            if p == self.n {
                let mut arcs = vec![0..0; k];
                let mut m = mask;
                while m != 0 {
                    let (prev, i) = from[m];
                    arcs[i] = best[prev].expect("reached")..best[m].expect("reached");
                    m = prev;
                }
                return Some(arcs);
            }
            for i in (0..k).filter(|&i| mask & (1 << i) == 0) {
                if let Some(q) = self.reach(i, p, bound) {
                    let next = mask | (1 << i);
                    if best[next].is_none_or(|b| q > b) {
                        best[next] = Some(q);
                        from[next] = (mask, i);
                    }
                }
            }
        }
        None
    }

    fn feasible(&self, order: &[usize], bound: f64) -> Option<Vec<Range<usize>>> {
        if (0..self.base.len()).any(|i| self.total(i, 0, 0) > bound) {
            return None;
        }
        let ok = |arcs: &Vec<Range<usize>>| self.costs_of(arcs).iter().all(|&c| c <= bound);
        if self.base.len() <= EXACT_ROBOTS {
            return self.subset_search(bound).filter(ok);
        }
        self.ordered_greedy(order, bound)
            .filter(ok)
            .or_else(|| self.farthest_greedy(bound).filter(ok))
    }
}

/// Splits `cycle` into contiguous arcs, one per robot, minimising the largest
/// `C1 + C2`.
///
/// `C2` is the transfer from the robot's phase-1 end to its arc plus the arc
/// itself, priced like every other walk (steps, or entered-cell costs when
/// `time_weighted`). Arcs run forward from cycle index 0. The bound is
/// bisected; for small teams each bound is checked exactly over robot
/// subsets, otherwise by greedy passes (robots ordered by their nearest cycle
/// index, or always the robot that reaches furthest). The equal-length split
/// is kept if it happens to do better. With `homes` every robot also pays its
/// way back home.
pub fn min_max_split(
    cycle: &[Cell],
    phase1_costs: &[f64],
    phase1_ends: &[Cell],
    map: &GridMap,
    time_weighted: bool,
    homes: Option<&[Cell]>,
) -> Split {
    assert!(!cycle.is_empty(), "cycle must be non-empty");
    let k = phase1_costs.len();
    assert!(k > 0 && phase1_ends.len() == k, "one phase-1 cost and end per robot");
    let n = cycle.len();
    let to_cycle: Vec<Vec<f64>> = phase1_ends
        .iter()
        .map(|&e| {
            let d = grid_distances(map, e, time_weighted);
            cycle.iter().map(|&c| d[map.index(c)]).collect()
        })
        .collect();
    let mut prefix = vec![0.0; n];
    for t in 1..n {
        prefix[t] = prefix[t - 1] + if time_weighted { map.cost(cycle[t]) } else { 1.0 };
    }
    let home = homes.map(|homes| {
        let mut back = Vec::with_capacity(k);
        let mut idle = Vec::with_capacity(k);
        for (i, &r) in homes.iter().enumerate() {
            let d = grid_distances(map, r, time_weighted);
            // Walking towards r pays for r instead of the cell left behind.
            let rev = |c: Cell| if time_weighted { d[map.index(c)] - map.cost(c) + map.cost(r) } else { d[map.index(c)] };
            back.push(cycle.iter().map(|&c| if c == r { 0.0 } else { rev(c) }).collect());
            idle.push(if phase1_ends[i] == r { 0.0 } else { rev(phase1_ends[i]) });
        }
        (back, idle)
    });
    let costs = SplitCosts { n, base: phase1_costs, to_cycle, prefix, home };

    let nearest: Vec<usize> = (0..k)
        .map(|i| {
            (0..n)
                .min_by(|&a, &b| costs.to_cycle[i][a].total_cmp(&costs.to_cycle[i][b]).then(a.cmp(&b)))
                .expect("cycle is non-empty")
        })
        .collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (nearest[i], i));

    // Bracket: one robot doing the whole cycle is always feasible.
    let lo0 = (0..k).map(|i| costs.total(i, 0, 0)).fold(0.0, f64::max);
    let solo = (0..k)
        .map(|i| (0..k).map(|j| if j == i { costs.total(i, 0, n) } else { costs.total(j, 0, 0) }).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min);
    let mut best = costs.feasible(&order, solo).unwrap_or_else(|| {
        let i = (0..k)
            .min_by(|&a, &b| costs.total(a, 0, n).total_cmp(&costs.total(b, 0, n)))
            .expect("k > 0");
        let mut arcs = vec![0..0; k];
        arcs[i] = 0..n;
        arcs
    });
    let (mut lo, mut hi) = (lo0, solo);
    if time_weighted {
        for _ in 0..64 {
            if hi - lo <= 1e-9 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            match costs.feasible(&order, mid) {
                Some(arcs) => {
                    best = arcs;
                    hi = mid;
                }
                None => lo = mid,
            }
        }
    } else {
        let (mut lo, mut hi) = (lo.round() as i64, hi.round() as i64);
        // Invariant: hi feasible. Probe below it.
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            match costs.feasible(&order, mid as f64) {
                Some(arcs) => {
                    best = arcs;
                    hi = mid;
                }
                None => lo = mid + 1,
            }
        }
    }

    let mut equal = vec![0..0; k];
    let mut p = 0;
    for (j, &i) in order.iter().enumerate() {
        let len = n / k + usize::from(j < n % k);
        equal[i] = p..p + len;
        p += len;
    }
    let max_of = |arcs: &[Range<usize>]| costs.costs_of(arcs).into_iter().fold(0.0, f64::max);
    if max_of(&equal) < max_of(&best) {
        best = equal;
    }

    let transfers = best
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if a.is_empty() {
                GridWalk::default()
            } else {
                grid_shortest_path(map, phase1_ends[i], cycle[a.start], time_weighted)
            }
        })
        .collect();
    let costs_out = costs.costs_of(&best);
    Split { arcs: best, transfers, costs: costs_out }
}

/// Steiner tree over the residual set, its cycle and the split, or `None`
/// when the priority walks already cover every block.
pub fn plan_residual(h: &HyperGraph, instance: &Instance, phase1: &[Phase1Plan]) -> Result<Option<ResidualPlan>> {
    let residual = residual_set(h, phase1);
    if residual.is_empty() {
        return Ok(None);
    }
    let map = &instance.map;
    let tw = instance.config.weighted_time;
    let steiner = steiner_tree(h, &residual);
    let root = *steiner.vertices.iter().next().expect("non-empty tree");
    let raw = circumnavigation_cycle(h, &steiner, h.cells(root)[0])?;

    let ends: Vec<Cell> = phase1.iter().map(|p| p.walk.last().expect("walks are non-empty")).collect();
    let mut origin = (f64::INFINITY, 0usize, 0usize);
    for (i, &e) in ends.iter().enumerate() {
        let d = grid_distances(map, e, tw);
        for (pos, &c) in raw.iter().enumerate() {
            let key = (d[map.index(c)], i, pos);
            if key.0 < origin.0 {
                origin = key;
            }
        }
    }
    let mut cycle = raw[origin.2..].to_vec();
    cycle.extend_from_slice(&raw[..origin.2]);

    let base: Vec<f64> = phase1.iter().map(|p| p.walk.cost(map, tw)).collect();
    let homes = instance.config.closed_tour.then_some(instance.robots.as_slice());
    let split = min_max_split(&cycle, &base, &ends, map, tw, homes);
    Ok(Some(ResidualPlan { steiner, cycle: GridWalk::new(cycle), split }))
}

/// Concatenates each robot's phase-1 walk, transfer and arc (and the way
/// home on closed tours).
pub fn plan_phase2(h: &HyperGraph, instance: &Instance, phase1: &[Phase1Plan], assignment: Assignment) -> Result<FullPlan> {
    let residual = plan_residual(h, instance, phase1)?;
    Ok(assemble(instance, phase1, residual.as_ref(), assignment))
}

pub fn assemble(instance: &Instance, phase1: &[Phase1Plan], residual: Option<&ResidualPlan>, assignment: Assignment) -> FullPlan {
    let map = &instance.map;
    let tw = instance.config.weighted_time;
    let mut paths = Vec::with_capacity(phase1.len());
    let mut phase_boundary = Vec::with_capacity(phase1.len());
    for (i, p) in phase1.iter().enumerate() {
        let mut cells = p.walk.cells.clone();
        phase_boundary.push(cells.len());
        if let Some(r) = residual {
            let arc = &r.split.arcs[i];
            if !arc.is_empty() {
                cells.extend_from_slice(&r.split.transfers[i].cells[1..]);
                cells.extend_from_slice(&r.cycle.cells[arc.start + 1..arc.end]);
            }
        }
        if instance.config.closed_tour {
            let end = *cells.last().expect("non-empty");
            let home = instance.robots[i];
            if end != home {
                cells.extend_from_slice(&grid_shortest_path(map, end, home, tw).cells[1..]);
            }
        }
        paths.push(GridWalk::new(cells));
    }
    FullPlan { paths, phase_boundary, assignment, instance_digest: instance.digest() }
}
