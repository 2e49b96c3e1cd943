//! Priority-aware multi-robot coverage path planning.
//!
//! A grid map with prioritized zones and robot start cells is contracted to a
//! graph of 2×2 blocks. Zones are assigned to robots greedily and refined by
//! local search, each robot covers its zones in order along spanning-tree
//! circumnavigations, and whatever remains uncovered is spanned by a Steiner
//! tree whose circumnavigation is split among the robots to balance the total
//! workload.
//!
//! The usual entry point is [`solver::solve`], which runs the whole pipeline
//! and reports per-stage timings. [`eval`] replays plans into metrics.

pub mod assignment;
pub mod error;
pub mod eval;
pub mod generate;
pub mod graph;
pub mod hypergraph;
pub mod instance;
pub mod phase1;
pub mod report;
pub mod residual;
pub mod solver;

pub use error::{Error, Result, ValidationError};
pub use hypergraph::{build_hypergraph, zone_hypervertices, HvId, HyperGraph};
pub use instance::{Cell, GridMap, Instance, Schedule, SolverConfig, Zone};
pub use eval::{baseline_plan, evaluate, lex_compare, validate_plan, Metrics};
pub use generate::{generate_instance, CostMode};
pub use residual::FullPlan;
pub use solver::{solve, Solution};
