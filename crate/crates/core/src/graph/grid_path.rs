use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::GridWalk;
use crate::instance::{Cell, GridMap};

#[derive(Clone, Copy, PartialEq)]
struct Label {
    cost: f64,
    hops: usize,
}

impl Label {
    fn cmp_key(&self, other: &Self) -> Ordering {
        self.cost.total_cmp(&other.cost).then(self.hops.cmp(&other.hops))
    }
}

struct Entry(Label, usize);

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp_key(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn step_cost(map: &GridMap, entered: Cell, time_weighted: bool) -> f64 {
    if time_weighted { map.cost(entered) } else { 1.0 }
}

/// Labels from `source` where each move pays for the cell it enters. With
/// `towards_source` the labels price walks ending at `source` instead, so a
/// move pays for the cell being left.
fn labels(map: &GridMap, source: Cell, time_weighted: bool, towards_source: bool) -> Vec<Label> {
    let mut label = vec![Label { cost: f64::INFINITY, hops: usize::MAX }; map.width() * map.height()];
    let s = map.index(source);
    label[s] = Label { cost: 0.0, hops: 0 };
    let mut heap = BinaryHeap::from([Entry(label[s], s)]);
    while let Some(Entry(l, i)) = heap.pop() {
        if l.cmp_key(&label[i]) == Ordering::Greater {
            continue;
        }
        let u = map.cell_at(i);
        for v in map.neighbors(u) {
            let paid = if towards_source { u } else { v };
            let cand = Label { cost: l.cost + step_cost(map, paid, time_weighted), hops: l.hops + 1 };
            let j = map.index(v);
            if cand.cmp_key(&label[j]) == Ordering::Less {
                label[j] = cand;
                heap.push(Entry(cand, j));
            }
        }
    }
    label
}

/// Travel cost from `source` to every cell (infinite for obstacles): step
/// counts, or the summed cost of entered cells when `time_weighted`.
pub fn grid_distances(map: &GridMap, source: Cell, time_weighted: bool) -> Vec<f64> {
    labels(map, source, time_weighted, false).into_iter().map(|l| l.cost).collect()
}

/// Cheapest 4-connected walk from `from` to `to`, both included. Among
/// equally cheap walks the one with fewer steps wins, then the one whose
/// next step is lexicographically smallest in (x, y).
pub fn grid_shortest_path(map: &GridMap, from: Cell, to: Cell, time_weighted: bool) -> GridWalk {
    let to_target = labels(map, to, time_weighted, true);
    let mut cells = vec![from];
    let mut cur = from;
    while cur != to {
        let next = map
            .neighbors(cur)
            .filter(|&n| to_target[map.index(n)].cost.is_finite())
            .min_by(|&a, &b| {
                let via = |n: Cell| {
                    let l = to_target[map.index(n)];
                    Label { cost: l.cost + step_cost(map, n, time_weighted), hops: l.hops + 1 }
                };
                via(a).cmp_key(&via(b)).then(a.cmp(&b))
            })
            .expect("free cells are connected");
        cells.push(next);
        cur = next;
    }
    GridWalk::new(cells)
}
