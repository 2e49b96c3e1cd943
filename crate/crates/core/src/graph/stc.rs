//! Spanning-tree coverage: walking around a tree of blocks so that every cell
//! of every block is visited once.

use super::{GridWalk, HyperTree};
use crate::error::{Error, Result};
use crate::hypergraph::{HyperGraph, Side};
use crate::instance::Cell;

/// Successor of `c` when circling the tree clockwise, tree on the right.
///
/// Each quadrant of a block looks at one side before following the block
/// boundary: TL checks north, TR east, BR south and BL west. A tree edge on
/// that side is crossed instead of turning.
fn next_cell(c: Cell, sides: u8) -> Cell {
    let has = |s: Side| sides & s.bit() != 0;
    match (c.x % 2, c.y % 2) {
        (0, 0) if has(Side::North) => Cell::new(c.x, c.y - 1),
        (0, 0) => Cell::new(c.x + 1, c.y),
        (1, 0) if has(Side::East) => Cell::new(c.x + 1, c.y),
        (1, 0) => Cell::new(c.x, c.y + 1),
        (1, 1) if has(Side::South) => Cell::new(c.x, c.y + 1),
        (1, 1) => Cell::new(c.x - 1, c.y),
        (0, 1) if has(Side::West) => Cell::new(c.x - 1, c.y),
        _ => Cell::new(c.x, c.y - 1),
    }
}

/// The circumnavigation as a cyclic sequence starting at `start`, without
/// the closing repeat. Its length is four times the number of tree vertices.
pub fn circumnavigation_cycle(h: &HyperGraph, tree: &HyperTree, start: Cell) -> Result<Vec<Cell>> {
    let outside = Error::StartOutsideTree { x: start.x, y: start.y };
    let start_hv = h.hv_of(start).ok_or(outside.clone())?;
    if !tree.vertices.contains(&start_hv) {
        return Err(outside);
    }
    let mut sides = vec![0u8; h.hv_count()];
    for &(a, b) in &tree.edges {
        let towards = h.side_towards(a, b).expect("tree edges join adjacent blocks");
        sides[a.0] |= towards.bit();
        let back = h.side_towards(b, a).expect("tree edges join adjacent blocks");
        sides[b.0] |= back.bit();
    }
    let expected = 4 * tree.vertices.len();
    let mut cycle = Vec::with_capacity(expected);
    let mut cur = start;
    loop {
        cycle.push(cur);
        let hv = h.hv_of(cur).expect("walk stays on tree blocks");
        cur = next_cell(cur, sides[hv.0]);
        if cur == start || cycle.len() > expected {
            break;
        }
    }
    if cycle.len() != expected {
        return Err(Error::Internal(format!(
            "circumnavigation visited {} cells, expected {expected}",
            cycle.len()
        )));
    }
    Ok(cycle)
}

/// Closed walk around `tree` starting and ending at `start`.
pub fn circumnavigate(h: &HyperGraph, tree: &HyperTree, start: Cell) -> Result<GridWalk> {
    let mut cells = circumnavigation_cycle(h, tree, start)?;
    cells.push(start);
    Ok(GridWalk::new(cells))
}
