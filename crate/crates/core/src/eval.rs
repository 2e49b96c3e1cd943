//! Replaying plans: zone coverage times, latency, makespan and balance.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::graph::GridWalk;
use crate::hypergraph::HyperGraph;
use crate::instance::Instance;
use crate::phase1::Phase1Plan;
use crate::residual::{plan_phase2, FullPlan};

/// Absolute tolerance under which two latencies count as tied.
pub const LATENCY_TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    /// Per zone, the 1-based timestep at which its last cell is first visited.
    pub zone_times: Vec<usize>,
    pub weighted_latency: f64,
    /// Longest path, in cells.
    pub makespan: usize,
    /// Longest path over mean path length.
    pub mmr: f64,
}

impl Metrics {
    pub fn lex_key(&self) -> (f64, usize) {
        (self.weighted_latency, self.makespan)
    }
}

/// Zone coverage times under synchronised replay: at timestep t every robot
/// has visited the first t cells of its path.
pub fn zone_coverage_times(instance: &Instance, paths: &[GridWalk]) -> Result<Vec<usize>> {
    let map = &instance.map;
    let mut first = vec![usize::MAX; map.width() * map.height()];
    for path in paths {
        for (t, &c) in path.cells.iter().enumerate() {
            if map.contains(c) {
                let slot = &mut first[map.index(c)];
                *slot = (*slot).min(t + 1);
            }
        }
    }
    instance
        .zones
        .iter()
        .map(|z| {
            let t = z.cells.iter().map(|&c| first[map.index(c)]).max().unwrap_or(0);
            if t == usize::MAX { Err(Error::ZoneNeverCovered(z.id)) } else { Ok(t) }
        })
        .collect()
}

pub fn evaluate(instance: &Instance, plan: &FullPlan) -> Result<Metrics> {
    let zone_times = zone_coverage_times(instance, &plan.paths)?;
    let weighted_latency = instance.zones.iter().zip(&zone_times).map(|(z, &t)| z.weight * t as f64).sum();
    let lens: Vec<usize> = plan.paths.iter().map(GridWalk::len).collect();
    let makespan = lens.iter().copied().max().unwrap_or(0);
    let mean = lens.iter().sum::<usize>() as f64 / lens.len().max(1) as f64;
    let mmr = if mean > 0.0 { makespan as f64 / mean } else { 1.0 };
    Ok(Metrics { zone_times, weighted_latency, makespan, mmr })
}

/// Latency first, then makespan. Latencies within
/// [`LATENCY_TIE_TOLERANCE`] are tied.
pub fn lex_compare(a: &Metrics, b: &Metrics) -> Ordering {
    if (a.weighted_latency - b.weighted_latency).abs() > LATENCY_TIE_TOLERANCE {
        a.weighted_latency.total_cmp(&b.weighted_latency)
    } else {
        a.makespan.cmp(&b.makespan)
    }
}

/// Checks a plan from anywhere: one path per robot starting at its start
/// cell, unit steps over free cells, every free cell visited, and closed
/// tours ending at home.
pub fn validate_plan(instance: &Instance, plan: &FullPlan) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidPlan(m));
    let map = &instance.map;
    if plan.paths.len() != instance.robots.len() {
        return bad(format!("expected {} robot paths, got {}", instance.robots.len(), plan.paths.len()));
    }
    let mut seen = vec![false; map.width() * map.height()];
    for (i, (path, &start)) in plan.paths.iter().zip(&instance.robots).enumerate() {
        if path.first() != Some(start) {
            return bad(format!("robot {i} does not start at {start}"));
        }
        for (j, &c) in path.cells.iter().enumerate() {
            if !map.is_free(c) {
                return bad(format!("blocked cell {c} at robot {i} index {j}"));
            }
            if j > 0 && !path.cells[j - 1].is_adjacent(c) {
                return bad(format!("non-adjacent step at robot {i} index {j}"));
            }
            seen[map.index(c)] = true;
        }
        if instance.config.closed_tour && path.last() != Some(start) {
            return bad(format!("robot {i} does not return to {start}"));
        }
    }
    if map.free_cells().any(|c| !seen[map.index(c)]) {
        return bad("coverage incomplete".into());
    }
    Ok(())
}

/// Zone-agnostic reference: every robot goes straight to the residual phase
/// and the whole map is shared out as one cycle.
pub fn baseline_plan(h: &HyperGraph, instance: &Instance) -> Result<FullPlan> {
    let idle: Vec<Phase1Plan> = instance.robots.iter().enumerate().map(|(i, &r)| Phase1Plan::idle(i, r)).collect();
    let assignment = Assignment { sequences: vec![Vec::new(); instance.robots.len()], surrogate_cost: 0.0 };
    plan_phase2(h, instance, &idle, assignment)
}
