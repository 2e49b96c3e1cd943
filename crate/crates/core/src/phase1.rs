//! Priority phase: one tree per assigned zone and a walk that finishes the
//! zones one after another.

use std::collections::BTreeSet;

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::graph::{circumnavigation_cycle, edge_key, dijkstra, grid_distances, grid_shortest_path, kruskal_mst, GridWalk, HyperTree};
use crate::hypergraph::{zone_hypervertices, HvId, HyperGraph};
use crate::instance::{Cell, GridMap, Instance, Zone};

#[derive(Clone, Debug, PartialEq)]
pub struct Phase1Plan {
    pub robot: usize,
    pub trees: Vec<HyperTree>,
    pub walk: GridWalk,
    /// Blocks whose four cells all appear in `walk`.
    pub covered_hvs: BTreeSet<HvId>,
    /// Union of the tree vertices.
    pub tree_hvs: BTreeSet<HvId>,
    /// Per assigned zone, in sequence order: the 1-based walk position at
    /// which the zone's last cell was first visited.
    pub zone_completion: Vec<usize>,
}

impl Phase1Plan {
    /// Phase 1 of a robot with nothing to prioritise.
    pub fn idle(robot: usize, start: Cell) -> Self {
        Self {
            robot,
            trees: Vec::new(),
            walk: GridWalk::new(vec![start]),
            covered_hvs: BTreeSet::new(),
            tree_hvs: BTreeSet::new(),
            zone_completion: Vec::new(),
        }
    }
}

/// Zone-wise tree construction.
///
/// Starting from `start_hv`, each zone gets the shortest path from the
/// current anchor to its nearest hypervertex (the entry) joined with the
/// zone's MST. The entry becomes the next anchor; each tree records the
/// anchor it was grown from.
pub fn build_zone_trees(h: &HyperGraph, start_hv: HvId, zones: &[BTreeSet<HvId>]) -> Result<Vec<HyperTree>> {
    let mut anchor = start_hv;
    let mut trees = Vec::with_capacity(zones.len());
    for zone in zones {
        let sp = dijkstra(h, anchor);
        let entry = *zone
            .iter()
            .min_by(|a, b| sp.distance(**a).total_cmp(&sp.distance(**b)).then(a.cmp(b)))
            .ok_or(Error::DisconnectedSubset)?;
        if !sp.distance(entry).is_finite() {
            return Err(Error::DisconnectedSubset);
        }
        let mut connector = sp.path_to(entry);
        // Keep the connector up to its first zone vertex so the union stays a tree.
        let cut = connector.iter().position(|v| zone.contains(v)).expect("entry is in the zone");
        connector.truncate(cut + 1);

        let mst = kruskal_mst(h, zone)?;
        let mut vertices = mst.vertices;
        let mut edges = mst.edges;
        vertices.extend(connector.iter().copied());
        for w in connector.windows(2) {
            edges.insert(edge_key(w[0], w[1]));
        }
        let mut tree = HyperTree::from_edges(h, vertices, edges);
        tree.anchor = Some(anchor);
        trees.push(tree);
        anchor = entry;
    }
    Ok(trees)
}

/// Output of [`sequential_tree_traversal`].
#[derive(Clone, Debug, PartialEq)]
pub struct Traversal {
    pub walk: GridWalk,
    pub zone_completion: Vec<usize>,
}

/// Walks the trees in order, leaving each one as soon as its zone is done.
///
/// The first tree is circled from `start_cell`. Every later tree is entered
/// at the cycle cell that finishes its zone soonest, counting the shortest
/// grid path from the current position. The last tree is circled completely
/// and closed, so a lone zone yields a plain spanning-tree coverage loop.
/// Cells already visited count towards later zones.
pub fn sequential_tree_traversal(
    h: &HyperGraph,
    map: &GridMap,
    zones: &[&Zone],
    trees: &[HyperTree],
    start_cell: Cell,
    time_weighted: bool,
) -> Result<Traversal> {
    assert_eq!(zones.len(), trees.len(), "one tree per zone");
    let mut visited = vec![false; map.width() * map.height()];
    let mut cells = vec![start_cell];
    visited[map.index(start_cell)] = true;
    let mut zone_completion = Vec::with_capacity(zones.len());

    for (j, (zone, tree)) in zones.iter().zip(trees).enumerate() {
        let last = j + 1 == zones.len();
        let mut remaining = zone.cells.iter().filter(|&&c| !visited[map.index(c)]).count();
        if remaining == 0 && !last {
            zone_completion.push(cells.len());
            continue;
        }
        let cur = *cells.last().expect("walk is never empty");
        let cycle = if j == 0 {
            circumnavigation_cycle(h, tree, start_cell)?
        } else {
            let any = h.cells(*tree.vertices.iter().next().expect("trees are non-empty"))[0];
            let raw = circumnavigation_cycle(h, tree, any)?;
            let s = best_entry(map, &raw, zone, &visited, cur, time_weighted);
            let mut rotated = raw[s..].to_vec();
            rotated.extend_from_slice(&raw[..s]);
            rotated
        };

        let mut visit = |c: Cell, cells: &mut Vec<Cell>, remaining: &mut usize| {
            cells.push(c);
            let i = map.index(c);
            if !visited[i] {
                visited[i] = true;
                if zone.contains(c) {
                    *remaining -= 1;
                }
            }
        };
        if remaining == 0 {
            zone_completion.push(cells.len());
        }
        let mut recorded = remaining == 0;
        if cycle[0] != cur {
            let bridge = grid_shortest_path(map, cur, cycle[0], time_weighted);
            for &c in &bridge.cells[1..] {
                visit(c, &mut cells, &mut remaining);
                if remaining == 0 && !recorded {
                    zone_completion.push(cells.len());
                    recorded = true;
                    if !last {
                        break;
                    }
                }
            }
            if recorded && !last {
                continue;
            }
        }
        let tail = if last { cycle.len() } else { cycle.len() - 1 };
        for step in 1..=tail {
            if recorded && !last {
                break;
            }
            visit(cycle[step % cycle.len()], &mut cells, &mut remaining);
            if remaining == 0 && !recorded {
                zone_completion.push(cells.len());
                recorded = true;
            }
        }
        if !recorded {
            return Err(Error::ZoneUnreachable);
        }
    }
    Ok(Traversal { walk: GridWalk::new(cells), zone_completion })
}

/// Rotation of `cycle` minimising travel from `cur` plus the forward steps
/// needed to visit every unvisited zone cell. Ties prefer the nearer start,
/// then the smaller index.
fn best_entry(map: &GridMap, cycle: &[Cell], zone: &Zone, visited: &[bool], cur: Cell, time_weighted: bool) -> usize {
    let n = cycle.len();
    let required: Vec<bool> = cycle.iter().map(|&c| zone.contains(c) && !visited[map.index(c)]).collect();
    let Some(max_req) = required.iter().rposition(|&r| r) else {
        return 0;
    };
    let dist = grid_distances(map, cur, time_weighted);
    let mut best = (f64::INFINITY, f64::INFINITY, 0);
    // Latest required index strictly before s, wrapping to the overall last.
    let mut prev = max_req;
    for s in 0..n {
        let span = (prev + n - s) % n;
        let d = dist[map.index(cycle[s])];
        let key = (d + span as f64, d, s);
        if key.0 < best.0 || (key.0 == best.0 && key.1 < best.1) {
            best = key;
        }
        if required[s] {
            prev = s;
        }
    }
    best.2
}

/// Trees and walk for one robot's zone sequence.
pub fn plan_robot(
    h: &HyperGraph,
    instance: &Instance,
    robot: usize,
    sequence: &[usize],
    zone_hvs: &[BTreeSet<HvId>],
) -> Result<Phase1Plan> {
    let start = instance.robots[robot];
    if sequence.is_empty() {
        return Ok(Phase1Plan::idle(robot, start));
    }
    let start_hv = h.hv_of(start).ok_or(Error::StartOutsideTree { x: start.x, y: start.y })?;
    let sets: Vec<BTreeSet<HvId>> = sequence.iter().map(|&z| zone_hvs[z].clone()).collect();
    let trees = build_zone_trees(h, start_hv, &sets)?;
    let zones: Vec<&Zone> = sequence.iter().map(|&z| &instance.zones[z]).collect();
    let Traversal { walk, zone_completion } =
        sequential_tree_traversal(h, &instance.map, &zones, &trees, start, instance.config.weighted_time)?;

    let mut seen = vec![false; instance.map.width() * instance.map.height()];
    for &c in &walk.cells {
        seen[instance.map.index(c)] = true;
    }
    let covered_hvs = h.ids().filter(|&u| h.cells(u).iter().all(|&c| seen[instance.map.index(c)])).collect();
    let tree_hvs = trees.iter().flat_map(|t| t.vertices.iter().copied()).collect();
    Ok(Phase1Plan { robot, trees, walk, covered_hvs, tree_hvs, zone_completion })
}

/// Hypervertex sets of every zone, in instance order.
pub fn all_zone_hypervertices(h: &HyperGraph, instance: &Instance) -> Result<Vec<BTreeSet<HvId>>> {
    instance.zones.iter().map(|z| zone_hypervertices(h, z)).collect()
}

/// Phase 1 for every robot.
pub fn plan_phase1(h: &HyperGraph, instance: &Instance, assignment: &Assignment) -> Result<Vec<Phase1Plan>> {
    let zone_hvs = all_zone_hypervertices(h, instance)?;
    plan_phase1_with(h, instance, assignment, &zone_hvs)
}

/// [`plan_phase1`] with precomputed zone hypervertex sets.
pub fn plan_phase1_with(
    h: &HyperGraph,
    instance: &Instance,
    assignment: &Assignment,
    zone_hvs: &[BTreeSet<HvId>],
) -> Result<Vec<Phase1Plan>> {
    (0..instance.robots.len())
        .map(|r| {
            let seq = assignment.sequences.get(r).map(Vec::as_slice).unwrap_or(&[]);
            plan_robot(h, instance, r, seq, zone_hvs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::build_hypergraph;
    use crate::instance::SolverConfig;

    fn block_zone(id: u32, bx: usize, by: usize) -> Zone {
        let (x, y) = (2 * bx, 2 * by);
        Zone::new(id, 1.0, [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)].map(|(x, y)| Cell::new(x, y)))
    }

    fn instance(w: usize, hgt: usize, zones: Vec<Zone>, robots: Vec<Cell>) -> Instance {
        Instance::new(GridMap::open(w, hgt).unwrap(), zones, robots, SolverConfig::default()).unwrap()
    }

    #[test]
    fn no_zones_no_trees() {
        let h = build_hypergraph(&GridMap::open(4, 4).unwrap());
        assert!(build_zone_trees(&h, HvId(0), &[]).unwrap().is_empty());
    }

    #[test]
    fn zone_holding_the_start_needs_no_connector() {
        let h = build_hypergraph(&GridMap::open(4, 4).unwrap());
        let zone = BTreeSet::from([HvId(0), HvId(1)]);
        let trees = build_zone_trees(&h, HvId(0), &[zone.clone()]).unwrap();
        assert_eq!(trees[0].vertices, zone);
        assert_eq!(trees[0].total_cost, 1.0);
        assert_eq!(trees[0].anchor, Some(HvId(0)));
    }

    #[test]
    fn connector_on_a_line() {
        // Blocks 0..4 in a row; start at 0, zone {2, 3}.
        let h = build_hypergraph(&GridMap::open(8, 2).unwrap());
        let trees = build_zone_trees(&h, HvId(0), &[BTreeSet::from([HvId(2), HvId(3)])]).unwrap();
        let t = &trees[0];
        assert_eq!(t.vertices.len(), 4);
        assert_eq!(t.edges.len(), 3);
        assert_eq!(t.total_cost, 3.0);
        assert!(t.is_valid_tree(&h));
    }

    #[test]
    fn anchors_chain_through_entries() {
        let h = build_hypergraph(&GridMap::open(10, 2).unwrap());
        let zones = [BTreeSet::from([HvId(2)]), BTreeSet::from([HvId(4)])];
        let trees = build_zone_trees(&h, HvId(0), &zones).unwrap();
        assert_eq!(trees[0].anchor, Some(HvId(0)));
        assert_eq!(trees[1].anchor, Some(HvId(2)));
        assert_eq!(trees[1].vertices, BTreeSet::from([HvId(2), HvId(3), HvId(4)]));
    }

    #[test]
    fn single_zone_is_a_closed_loop() {
        let inst = instance(4, 4, vec![Zone::new(0, 1.0, GridMap::open(4, 4).unwrap().free_cells())], vec![Cell::new(1, 2)]);
        let h = build_hypergraph(&inst.map);
        let a = Assignment { sequences: vec![vec![0]], surrogate_cost: 0.0 };
        let plan = &plan_phase1(&h, &inst, &a).unwrap()[0];
        assert_eq!(plan.walk.len(), 17);
        assert_eq!(plan.walk.first(), Some(Cell::new(1, 2)));
        assert_eq!(plan.walk.last(), Some(Cell::new(1, 2)));
        assert!(plan.walk.is_valid(&inst.map));
        assert_eq!(plan.covered_hvs.len(), 4);
        assert_eq!(plan.zone_completion, vec![16]);
    }

    #[test]
    fn earlier_zone_exits_once_done() {
        // Line of blocks; robot in block 0, zones in blocks 1 and 3.
        let inst = instance(8, 2, vec![block_zone(0, 1, 0), block_zone(1, 3, 0)], vec![Cell::new(0, 0)]);
        let h = build_hypergraph(&inst.map);
        let a = Assignment { sequences: vec![vec![0, 1]], surrogate_cost: 0.0 };
        let plan = &plan_phase1(&h, &inst, &a).unwrap()[0];
        assert!(plan.walk.is_valid(&inst.map));
        // Block 0 to block 1 along the top, around block 1: the zone is done
        // after (0,0) (1,0) (2,0) (3,0) (3,1) (2,1), before circling back.
        assert_eq!(plan.zone_completion[0], 6);
        assert_eq!(&plan.walk.cells[..6], &[(0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (2, 1)].map(|(x, y)| Cell::new(x, y)));
        assert!(plan.zone_completion[0] < plan.zone_completion[1]);
    }

    #[test]
    fn adjacent_single_block_zones() {
        let inst = instance(4, 2, vec![block_zone(0, 0, 0), block_zone(1, 1, 0)], vec![Cell::new(0, 0)]);
        let h = build_hypergraph(&inst.map);
        let a = Assignment { sequences: vec![vec![0, 1]], surrogate_cost: 0.0 };
        let plan = &plan_phase1(&h, &inst, &a).unwrap()[0];
        assert!(plan.walk.is_valid(&inst.map));
        // Block 0 is circled until its four cells are in, then the second
        // tree (connector block 0 plus block 1) is circled once and closed
        // from where the first loop stopped.
        assert_eq!(plan.zone_completion, vec![4, 10]);
        assert_eq!(plan.walk.len(), 4 + 8);
        assert_eq!(plan.walk.cells[3], plan.walk.cells[11]);
    }

    #[test]
    fn idle_robot() {
        let inst = instance(4, 4, vec![block_zone(0, 1, 1)], vec![Cell::new(0, 0), Cell::new(3, 0)]);
        let h = build_hypergraph(&inst.map);
        let a = Assignment { sequences: vec![vec![0], vec![]], surrogate_cost: 0.0 };
        let plans = plan_phase1(&h, &inst, &a).unwrap();
        assert_eq!(plans[1].walk.cells, vec![Cell::new(3, 0)]);
        assert!(plans[1].covered_hvs.is_empty());
        for &c in &inst.zones[0].cells {
            assert!(plans[0].walk.cells.contains(&c));
        }
    }
}
