//! Ordered zone assignment: cost tables, the additive surrogate latency,
//! greedy construction, local-search refinement and an exhaustive oracle.

mod greedy;
mod local_search;
mod oracle;
mod tables;

pub use greedy::greedy_assign;
pub use local_search::{local_search, move_probability, LocalSearchOutcome, LsOperator, LsStep};
pub use oracle::{brute_force_assign, ORACLE_MAX_ROBOTS, ORACLE_MAX_ZONES};
pub use tables::{compute_cost_tables, CostTables};

/// Per-robot ordered zone indices (positions in the instance's zone list).
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    pub sequences: Vec<Vec<usize>>,
    pub surrogate_cost: f64,
}

impl Assignment {
    pub fn new(sequences: Vec<Vec<usize>>, tables: &CostTables, weights: &[f64]) -> Self {
        let surrogate_cost = surrogate_latency(tables, weights, &sequences);
        Self { sequences, surrogate_cost }
    }

    /// Every zone in `0..n_zones` appears exactly once across all sequences.
    pub fn is_partition(&self, n_zones: usize) -> bool {
        let mut seen = vec![false; n_zones];
        for &z in self.sequences.iter().flatten() {
            if z >= n_zones || std::mem::replace(&mut seen[z], true) {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Robot index serving each zone.
    pub fn owner_of(&self, zone: usize) -> Option<usize> {
        self.sequences.iter().position(|seq| seq.contains(&zone))
    }
}

/// Weighted sum of surrogate arrival times.
///
/// Along a robot's sequence the arrival time accumulates the travel cost into
/// each zone (from the depot for the first, from the previous zone
/// afterwards) plus the zone's internal tree cost; each zone contributes its
/// weight times that arrival time.
pub fn surrogate_latency(tables: &CostTables, weights: &[f64], sequences: &[Vec<usize>]) -> f64 {
    let mut total = 0.0;
    for (robot, seq) in sequences.iter().enumerate() {
        let mut elapsed = 0.0;
        let mut prev: Option<usize> = None;
        for &z in seq {
            let travel = match prev {
                None => tables.depot_to_zone[robot][z],
                Some(p) => tables.zone_to_zone[p][z],
            };
            elapsed += travel + tables.zone_internal[z];
            total += weights[z] * elapsed;
            prev = Some(z);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_zone_tables() -> CostTables {
        CostTables {
            zone_internal: vec![2.0, 2.0],
            depot_to_zone: vec![vec![1.0, 4.0]],
            zone_to_zone: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        }
    }

    #[test]
    fn empty_sequences_cost_nothing() {
        let t = two_zone_tables();
        assert_eq!(surrogate_latency(&t, &[1.0, 1.0], &[vec![]]), 0.0);
    }

    #[test]
    fn single_term() {
        let t = CostTables {
            zone_internal: vec![3.0],
            depot_to_zone: vec![vec![2.0]],
            zone_to_zone: vec![vec![0.0]],
        };
        assert_eq!(surrogate_latency(&t, &[1.0], &[vec![0]]), 5.0);
    }

    #[test]
    fn recurrence_by_hand() {
        // 1*(1+2) + 2*(3+1+2) = 15
        let t = two_zone_tables();
        assert_eq!(surrogate_latency(&t, &[1.0, 2.0], &[vec![0, 1]]), 15.0);
    }

    #[test]
    fn partition_check() {
        let t = two_zone_tables();
        assert!(Assignment::new(vec![vec![1, 0]], &t, &[1.0, 1.0]).is_partition(2));
        assert!(!Assignment::new(vec![vec![1, 1]], &t, &[1.0, 1.0]).is_partition(2));
        assert!(!Assignment::new(vec![vec![1]], &t, &[1.0, 1.0]).is_partition(2));
    }
}
