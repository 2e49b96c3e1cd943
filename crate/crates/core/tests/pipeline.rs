use pamcpp_core::phase1::plan_phase1;
use pamcpp_core::residual::plan_phase2;
use pamcpp_core::*;
use serde_json::json;

fn rect(id: u32, x0: usize, y0: usize, w: usize, h: usize) -> Zone {
    Zone::new(id, 1.0, (y0..y0 + h).flat_map(|y| (x0..x0 + w).map(move |x| Cell::new(x, y))))
}

/// An office-like 50×30 floor: two walls of blocks with doorways, six rooms
/// as zones, ten robots in the corridor.
fn office() -> Instance {
    let mut rows = vec![vec!['.'; 50]; 30];
    for y in 0..30 {
        for x in 16..18 {
            if !(12..16).contains(&y) {
                rows[y][x] = '#';
            }
        }
        for x in 32..34 {
            if !(14..18).contains(&y) {
                rows[y][x] = '#';
            }
        }
    }
    let rows: Vec<String> = rows.into_iter().map(|r| r.into_iter().collect()).collect();
    let zones: Vec<_> = [(2, 2), (20, 2), (36, 2), (2, 22), (20, 22), (36, 22)]
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| json!({ "id": i, "weight": 1.0 + i as f64, "cells": (y..y + 4).flat_map(|y| (x..x + 6).map(move |x| [x, y])).collect::<Vec<_>>() }))
        .collect();
    let robots: Vec<_> = (0..10).map(|i| [2 + 4 * i, 14]).collect();
    let doc = json!({ "width": 50, "height": 30, "rows": rows, "zones": zones, "robots": robots });
    Instance::from_json(&doc.to_string()).unwrap()
}

#[test]
fn office_floor_solves() {
    let inst = office();
    assert_eq!(inst.zones.len(), 6);
    assert_eq!(inst.robots.len(), 10);
    let (solution, metrics, _, baseline) = solver::solve_with_baseline(&inst).unwrap();
    validate_plan(&inst, &solution.plan).unwrap();
    assert!(metrics.weighted_latency < baseline.weighted_latency);
}

#[test]
fn two_zone_robot_finishes_zones_before_residual() {
    // Three robots, four zones; some robot ends up with two zones.
    let inst = Instance::new(
        GridMap::open(24, 16).unwrap(),
        vec![rect(0, 2, 2, 4, 4), rect(1, 8, 2, 4, 2), rect(2, 18, 10, 4, 4), rect(3, 2, 12, 2, 2)],
        vec![Cell::new(0, 0), Cell::new(23, 15), Cell::new(12, 8)],
        SolverConfig::default(),
    )
    .unwrap();
    let sol = solve(&inst).unwrap();
    let (r, seq) = sol
        .plan
        .assignment
        .sequences
        .iter()
        .enumerate()
        .find(|(_, s)| s.len() >= 2)
        .expect("some robot serves two zones");
    let p1 = &sol.phase1[r];
    assert!(p1.zone_completion[0] < p1.zone_completion[1]);
    assert!(p1.zone_completion[seq.len() - 1] <= sol.plan.phase_boundary[r]);
}

#[test]
fn robots_without_zones_go_straight_to_residual() {
    let inst = Instance::new(
        GridMap::open(16, 16).unwrap(),
        vec![rect(0, 0, 0, 4, 4)],
        vec![Cell::new(1, 5), Cell::new(15, 15), Cell::new(8, 15)],
        SolverConfig::default(),
    )
    .unwrap();
    let sol = solve(&inst).unwrap();
    for (seq, &b) in sol.plan.assignment.sequences.iter().zip(&sol.plan.phase_boundary) {
        if seq.is_empty() {
            assert_eq!(b, 1);
        }
    }
    assert_eq!(sol.plan.assignment.sequences.iter().filter(|s| s.is_empty()).count(), 2);
}

#[test]
fn zones_covering_the_map_leave_no_residual() {
    let inst = Instance::new(
        GridMap::open(8, 4).unwrap(),
        vec![rect(0, 0, 0, 4, 4), rect(1, 4, 0, 4, 4)],
        vec![Cell::new(0, 0), Cell::new(7, 3)],
        SolverConfig::default(),
    )
    .unwrap();
    let sol = solve(&inst).unwrap();
    assert!(sol.residual.is_none());
    for (path, p1) in sol.plan.paths.iter().zip(&sol.phase1) {
        assert_eq!(path, &p1.walk);
    }
    validate_plan(&inst, &sol.plan).unwrap();
}

#[test]
fn symmetric_baseline_is_balanced() {
    let inst = Instance::new(GridMap::open(12, 12).unwrap(), vec![], vec![Cell::new(0, 0), Cell::new(11, 11)], SolverConfig::default()).unwrap();
    let h = build_hypergraph(&inst.map);
    let plan = baseline_plan(&h, &inst).unwrap();
    validate_plan(&inst, &plan).unwrap();
    let (a, b) = (plan.paths[0].len(), plan.paths[1].len());
    assert!(a.abs_diff(b) <= 4, "{a} vs {b}");
}

#[test]
fn baseline_is_phase_two_from_idle_starts() {
    let inst = Instance::new(GridMap::open(4, 4).unwrap(), vec![rect(0, 2, 2, 2, 2)], vec![Cell::new(0, 0)], SolverConfig::default()).unwrap();
    let h = build_hypergraph(&inst.map);
    let idle = pamcpp_core::assignment::Assignment { sequences: vec![vec![]], surrogate_cost: 0.0 };
    let p1 = plan_phase1(&h, &inst, &idle).unwrap();
    let direct = plan_phase2(&h, &inst, &p1, idle).unwrap();
    assert_eq!(baseline_plan(&h, &inst).unwrap(), direct);
}

#[test]
fn more_search_never_hurts_the_surrogate() {
    let inst = generate_instance(21, 24, 24, 8, 3, CostMode::Uniform).unwrap();
    let with = |n: usize| {
        let mut i = inst.clone();
        i.config.ls_iterations = n;
        solve(&i).unwrap().plan.assignment.surrogate_cost
    };
    assert!(with(2000) <= with(0));
}

#[test]
fn closed_tours_come_home() {
    let mut inst = generate_instance(8, 16, 16, 3, 3, CostMode::Uniform).unwrap();
    inst.config.closed_tour = true;
    inst.config.weighted_time = true;
    let sol = solve(&inst).unwrap();
    validate_plan(&inst, &sol.plan).unwrap();
    for (p, &r) in sol.plan.paths.iter().zip(&inst.robots) {
        assert_eq!(p.last(), Some(r));
    }
}
