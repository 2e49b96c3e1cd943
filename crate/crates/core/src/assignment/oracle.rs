use super::{surrogate_latency, Assignment, CostTables};
use crate::error::{Error, Result};

pub const ORACLE_MAX_ZONES: usize = 7;
pub const ORACLE_MAX_ROBOTS: usize = 3;

/// Exhaustive minimizer of the surrogate latency.
///
/// Every ordered partition of the zones into per-robot sequences is one
/// permutation of the zones cut into `n_robots` consecutive (possibly empty)
/// runs, so enumerating permutations times cut positions visits each
/// candidate exactly once. Cost ties keep the lexicographically smallest
/// sequence list.
pub fn brute_force_assign(tables: &CostTables, weights: &[f64], n_robots: usize) -> Result<Assignment> {
    let n = tables.n_zones();
    if n > ORACLE_MAX_ZONES || n_robots > ORACLE_MAX_ROBOTS || n_robots == 0 {
        return Err(Error::OracleTooLarge { zones: n, robots: n_robots });
    }
    let mut best: Option<(f64, Vec<Vec<usize>>)> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut cuts = vec![0usize; n_robots - 1];
        loop {
            let sequences = split(&perm, &cuts);
            let cost = surrogate_latency(tables, weights, &sequences);
            let better = match &best {
                None => true,
                Some((c, s)) => cost < *c || (cost == *c && sequences < *s),
            };
            if better {
                best = Some((cost, sequences));
            }
            if !next_cuts(&mut cuts, n) {
                break;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (surrogate_cost, sequences) = best.expect("at least one candidate");
    Ok(Assignment { sequences, surrogate_cost })
}

fn split(perm: &[usize], cuts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut lo = 0;
    for &c in cuts {
        out.push(perm[lo..c].to_vec());
        lo = c;
    }
    out.push(perm[lo..].to_vec());
    out
}

/// Advances non-decreasing cut positions in `0..=n`.
fn next_cuts(cuts: &mut [usize], n: usize) -> bool {
    for i in (0..cuts.len()).rev() {
        if cuts[i] < n {
            cuts[i] += 1;
            for j in i + 1..cuts.len() {
                cuts[j] = cuts[i];
            }
            return true;
        }
    }
    false
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_candidates(n: usize, k: usize) -> usize {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            let mut cuts = vec![0; k - 1];
            loop {
                count += 1;
                if !next_cuts(&mut cuts, n) {
                    break;
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        count
    }

    #[test]
    fn enumeration_counts() {
        // n! * C(n + k - 1, k - 1)
        assert_eq!(count_candidates(1, 1), 1);
        assert_eq!(count_candidates(2, 1), 2);
        assert_eq!(count_candidates(3, 2), 24);
        assert_eq!(count_candidates(4, 3), 24 * 15);
    }

    #[test]
    fn trivial_spaces() {
        let one = CostTables { zone_internal: vec![2.0], depot_to_zone: vec![vec![1.0]], zone_to_zone: vec![vec![0.0]] };
        let a = brute_force_assign(&one, &[1.0], 1).unwrap();
        assert_eq!(a.sequences, vec![vec![0]]);
        assert_eq!(a.surrogate_cost, 3.0);
        let two = crate::assignment::tests::two_zone_tables();
        let a = brute_force_assign(&two, &[1.0, 2.0], 1).unwrap();
        assert_eq!(a.sequences, vec![vec![0, 1]]);
        assert_eq!(a.surrogate_cost, 15.0);
    }

    #[test]
    fn refuses_large_instances() {
        let t = CostTables {
            zone_internal: vec![1.0; 8],
            depot_to_zone: vec![vec![1.0; 8]],
            zone_to_zone: vec![vec![1.0; 8]; 8],
        };
        assert_eq!(
            brute_force_assign(&t, &[1.0; 8], 1).unwrap_err(),
            Error::OracleTooLarge { zones: 8, robots: 1 }
        );
    }
}
