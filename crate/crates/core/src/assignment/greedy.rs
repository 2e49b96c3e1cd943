use super::{Assignment, CostTables};

/// Greedy construction: repeatedly append the (robot, zone) pair with the
/// smallest weighted arrival time, where arrival counts the robot's elapsed
/// surrogate time, travel into the zone and the zone's internal cost.
/// Ties go to the smaller robot index, then the smaller zone index.
pub fn greedy_assign(tables: &CostTables, weights: &[f64], n_robots: usize) -> Assignment {
    let n_zones = tables.n_zones();
    let mut sequences: Vec<Vec<usize>> = vec![Vec::new(); n_robots];
    let mut elapsed = vec![0.0; n_robots];
    let mut unassigned: Vec<usize> = (0..n_zones).collect();
    while !unassigned.is_empty() {
        let mut best: Option<(f64, usize, usize, usize)> = None;
        for robot in 0..n_robots {
            for (slot, &zone) in unassigned.iter().enumerate() {
                let travel = match sequences[robot].last() {
                    None => tables.depot_to_zone[robot][zone],
                    Some(&end) => tables.zone_to_zone[end][zone],
                };
                let delta = weights[zone] * (elapsed[robot] + travel + tables.zone_internal[zone]);
                let better = match best {
                    None => true,
                    Some((d, r, z, _)) => delta.total_cmp(&d).then((robot, zone).cmp(&(r, z))).is_lt(),
                };
                if better {
                    best = Some((delta, robot, zone, slot));
                }
            }
        }
        let (_, robot, zone, slot) = best.expect("at least one robot and one zone");
        let travel = match sequences[robot].last() {
            None => tables.depot_to_zone[robot][zone],
            Some(&end) => tables.zone_to_zone[end][zone],
        };
        elapsed[robot] += travel + tables.zone_internal[zone];
        sequences[robot].push(zone);
        unassigned.remove(slot);
    }
    Assignment::new(sequences, tables, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_robot_follows_forced_order() {
        // Zone 2 is closest, then zone 0 from there, then zone 1.
        let t = CostTables {
            zone_internal: vec![1.0, 1.0, 1.0],
            depot_to_zone: vec![vec![5.0, 9.0, 1.0]],
            zone_to_zone: vec![vec![0.0, 2.0, 1.0], vec![2.0, 0.0, 6.0], vec![1.0, 6.0, 0.0]],
        };
        let a = greedy_assign(&t, &[1.0; 3], 1);
        assert_eq!(a.sequences, vec![vec![2, 0, 1]]);
    }

    #[test]
    fn equidistant_robots_tie_to_robot_zero() {
        let t = CostTables {
            zone_internal: vec![1.0],
            depot_to_zone: vec![vec![3.0], vec![3.0]],
            zone_to_zone: vec![vec![0.0]],
        };
        let a = greedy_assign(&t, &[1.0], 2);
        assert_eq!(a.sequences, vec![vec![0], vec![]]);
    }

    #[test]
    fn no_zones() {
        let t = CostTables { zone_internal: vec![], depot_to_zone: vec![vec![], vec![]], zone_to_zone: vec![] };
        let a = greedy_assign(&t, &[], 2);
        assert_eq!(a.sequences, vec![Vec::<usize>::new(), vec![]]);
        assert_eq!(a.surrogate_cost, 0.0);
    }
}
