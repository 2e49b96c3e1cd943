use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{dijkstra_from_set, kruskal_mst};
use crate::hypergraph::{HvId, HyperGraph};
use crate::instance::Instance;

/// Travel and coverage costs on the block graph that the assignment stage
/// optimizes against.
#[derive(Clone, Debug, PartialEq)]
pub struct CostTables {
    /// MST cost of each zone's hypervertices.
    pub zone_internal: Vec<f64>,
    /// `[robot][zone]`: distance from the robot's start block to the zone.
    pub depot_to_zone: Vec<Vec<f64>>,
    /// Symmetric, zero diagonal: closest-pair distance between zones.
    pub zone_to_zone: Vec<Vec<f64>>,
}

impl CostTables {
    pub fn n_zones(&self) -> usize {
        self.zone_internal.len()
    }

    pub fn n_robots(&self) -> usize {
        self.depot_to_zone.len()
    }
}

pub fn compute_cost_tables(h: &HyperGraph, instance: &Instance, zone_hvs: &[BTreeSet<HvId>]) -> Result<CostTables> {
    let n = zone_hvs.len();
    let zone_internal = zone_hvs
        .iter()
        .map(|set| kruskal_mst(h, set).map(|t| t.total_cost))
        .collect::<Result<Vec<_>>>()?;

    let mut depot_to_zone = Vec::with_capacity(instance.robots.len());
    for &start in &instance.robots {
        let hv = h
            .hv_of(start)
            .ok_or_else(|| Error::Internal(format!("robot start {start} has no block")))?;
        let sp = dijkstra_from_set(h, [hv]);
        depot_to_zone.push(zone_hvs.iter().map(|set| min_dist(&sp.dist, set)).collect());
    }

    let mut zone_to_zone = vec![vec![0.0; n]; n];
    for j in 0..n {
        let sp = dijkstra_from_set(h, zone_hvs[j].iter().copied());
        for k in (j + 1)..n {
            let d = min_dist(&sp.dist, &zone_hvs[k]);
            zone_to_zone[j][k] = d;
            zone_to_zone[k][j] = d;
        }
    }
    Ok(CostTables { zone_internal, depot_to_zone, zone_to_zone })
}

fn min_dist(dist: &[f64], set: &BTreeSet<HvId>) -> f64 {
    set.iter().map(|v| dist[v.0]).fold(f64::INFINITY, f64::min)
}
