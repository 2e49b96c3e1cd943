//! The full two-phase pipeline with per-stage wall-clock timings.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::assignment::{compute_cost_tables, greedy_assign, local_search, Assignment, CostTables, LsStep};
use crate::error::Result;
use crate::eval::{baseline_plan, evaluate, Metrics};
use crate::hypergraph::{build_hypergraph, HyperGraph};
use crate::instance::Instance;
use crate::phase1::{all_zone_hypervertices, plan_phase1_with, Phase1Plan};
use crate::residual::{assemble, plan_residual, FullPlan, ResidualPlan};

/// Wall time per pipeline stage, in seconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuntimeBreakdown {
    pub cost_calculation: f64,
    pub zone_assignment: f64,
    pub sequential_tree_traversal: f64,
    pub residual_path_planning: f64,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub hypergraph: HyperGraph,
    pub tables: CostTables,
    pub greedy: Assignment,
    pub ls_trace: Vec<LsStep>,
    pub phase1: Vec<Phase1Plan>,
    pub residual: Option<ResidualPlan>,
    pub plan: FullPlan,
    pub timings: RuntimeBreakdown,
}

fn timed<T>(slot: &mut f64, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    *slot = t.elapsed().as_secs_f64();
    out
}

/// Cost tables, greedy assignment refined by local search, priority walks,
/// then the residual split.
pub fn solve(instance: &Instance) -> Result<Solution> {
    let mut timings = RuntimeBreakdown::default();
    let weights = instance.weights();
    let (hypergraph, zone_hvs, tables) = timed(&mut timings.cost_calculation, || -> Result<_> {
        let h = build_hypergraph(&instance.map);
        let zone_hvs = all_zone_hypervertices(&h, instance)?;
        let tables = compute_cost_tables(&h, instance, &zone_hvs)?;
        Ok((h, zone_hvs, tables))
    })?;
    let (greedy, refined) = timed(&mut timings.zone_assignment, || {
        let greedy = greedy_assign(&tables, &weights, instance.robots.len());
        let refined = local_search(&greedy, &tables, &weights, &instance.config);
        (greedy, refined)
    });
    let assignment = refined.assignment;
    let phase1 = timed(&mut timings.sequential_tree_traversal, || {
        plan_phase1_with(&hypergraph, instance, &assignment, &zone_hvs)
    })?;
    let (residual, plan) = timed(&mut timings.residual_path_planning, || -> Result<_> {
        let residual = plan_residual(&hypergraph, instance, &phase1)?;
        let plan = assemble(instance, &phase1, residual.as_ref(), assignment);
        Ok((residual, plan))
    })?;
    Ok(Solution { hypergraph, tables, greedy, ls_trace: refined.trace, phase1, residual, plan, timings })
}

/// Solver and baseline metrics side by side.
pub fn solve_with_baseline(instance: &Instance) -> Result<(Solution, Metrics, FullPlan, Metrics)> {
    let solution = solve(instance)?;
    let metrics = evaluate(instance, &solution.plan)?;
    let baseline = baseline_plan(&solution.hypergraph, instance)?;
    let baseline_metrics = evaluate(instance, &baseline)?;
    Ok((solution, metrics, baseline, baseline_metrics))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::validate_plan;
    use crate::instance::{Cell, GridMap, SolverConfig, Zone};

    #[test]
    fn small_pipeline_is_valid() {
        let zones = vec![
            Zone::new(0, 2.0, (4..6).flat_map(|x| (4..6).map(move |y| Cell::new(x, y)))),
            Zone::new(1, 1.0, (0..3).map(|x| Cell::new(x, 7))),
        ];
        let inst = Instance::new(
            GridMap::open(8, 8).unwrap(),
            zones,
            vec![Cell::new(0, 0), Cell::new(7, 0)],
            SolverConfig { ls_iterations: 50, ..SolverConfig::default() },
        )
        .unwrap();
        let s = solve(&inst).unwrap();
        validate_plan(&inst, &s.plan).unwrap();
        assert!(s.plan.assignment.is_partition(2));
        assert!(s.plan.assignment.surrogate_cost <= s.greedy.surrogate_cost);
        assert_eq!(s.ls_trace.len(), 50);
        let m = evaluate(&inst, &s.plan).unwrap();
        assert!(m.zone_times.iter().all(|&t| t <= m.makespan));
    }
}
