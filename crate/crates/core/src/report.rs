//! File formats: solve reports and replayable plans.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::assignment::{Assignment, LsStep};
use crate::error::{Error, Result};
use crate::eval::Metrics;
use crate::graph::GridWalk;
use crate::instance::{Cell, Instance};
use crate::residual::FullPlan;
use crate::solver::{RuntimeBreakdown, Solution};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub instance_digest: String,
    /// Per robot, zone ids in visiting order.
    pub assignment: Vec<Vec<u32>>,
    pub surrogate: f64,
    pub metrics: Metrics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics_baseline: Option<Metrics>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ls_trace: Option<Vec<LsStep>>,
    pub runtime_breakdown: RuntimeBreakdown,
}

impl SolveReport {
    pub fn new(instance: &Instance, solution: &Solution, metrics: Metrics) -> Self {
        Self {
            instance_digest: instance.digest(),
            assignment: assignment_ids(instance, &solution.plan.assignment),
            surrogate: solution.plan.assignment.surrogate_cost,
            metrics,
            metrics_baseline: None,
            ls_trace: None,
            runtime_breakdown: solution.timings,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotPath {
    pub path: Vec<Cell>,
    pub phase_boundary: usize,
}

/// On-disk plan: cell lists per robot plus the zone order that produced them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanFile {
    pub robots: Vec<RobotPath>,
    pub assignment: Vec<Vec<u32>>,
}

/// Zone indices to zone ids.
pub fn assignment_ids(instance: &Instance, assignment: &Assignment) -> Vec<Vec<u32>> {
    assignment.sequences.iter().map(|seq| seq.iter().map(|&z| instance.zones[z].id).collect()).collect()
}

impl PlanFile {
    pub fn from_plan(instance: &Instance, plan: &FullPlan) -> Self {
        let robots = plan
            .paths
            .iter()
            .zip(&plan.phase_boundary)
            .map(|(p, &b)| RobotPath { path: p.cells.clone(), phase_boundary: b })
            .collect();
        Self { robots, assignment: assignment_ids(instance, &plan.assignment) }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plans serialize");
        s.push('\n');
        s
    }

    /// Rebuilds a [`FullPlan`] against `instance`, resolving zone ids. The
    /// surrogate cost is not stored and comes back as zero.
    pub fn into_full_plan(self, instance: &Instance) -> Result<FullPlan> {
        let index: BTreeMap<u32, usize> = instance.zones.iter().enumerate().map(|(i, z)| (z.id, i)).collect();
        let sequences = self
            .assignment
            .iter()
            .map(|seq| {
                seq.iter()
                    .map(|id| index.get(id).copied().ok_or_else(|| Error::InvalidPlan(format!("unknown zone id {id}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let (paths, phase_boundary) = self.robots.into_iter().map(|r| (GridWalk::new(r.path), r.phase_boundary)).unzip();
        Ok(FullPlan {
            paths,
            phase_boundary,
            assignment: Assignment { sequences, surrogate_cost: 0.0 },
            instance_digest: instance.digest(),
        })
    }
}
