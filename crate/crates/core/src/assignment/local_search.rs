use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{surrogate_latency, Assignment, CostTables};
use crate::instance::{Schedule, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LsOperator {
    Move,
    Swap,
}

/// One local-search iteration; `surrogate` is the incumbent after the
/// accept/reject decision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LsStep {
    pub iteration: usize,
    pub operator: LsOperator,
    pub accepted: bool,
    pub surrogate: f64,
}

#[derive(Clone, Debug)]
pub struct LocalSearchOutcome {
    pub assignment: Assignment,
    pub trace: Vec<LsStep>,
}

/// Probability of picking the move operator at iteration `t`.
///
/// Cosine: `0.5 * (1 + cos(2πt / P))` with `P = ceil(fraction * iterations)`,
/// so move starts certain and swap takes over mid-period. Static: 0.5.
pub fn move_probability(schedule: Schedule, t: usize, iterations: usize, period_fraction: f64) -> f64 {
    match schedule {
        Schedule::Static => 0.5,
        Schedule::Cosine => {
            let period = ((period_fraction * iterations as f64).ceil() as usize).max(1);
            let phase = (t % period) as f64 / period as f64;
            0.5 * (1.0 + (2.0 * std::f64::consts::PI * phase).cos())
        }
    }
}

/// Position of the `k`-th zone when all sequences are read in robot order.
fn locate(sequences: &[Vec<usize>], mut k: usize) -> (usize, usize) {
    for (robot, seq) in sequences.iter().enumerate() {
        if k < seq.len() {
            return (robot, k);
        }
        k -= seq.len();
    }
    unreachable!("zone index within total count")
}

fn apply_move(sequences: &mut [Vec<usize>], n_zones: usize, rng: &mut ChaCha8Rng) {
    let (from, pos) = locate(sequences, rng.gen_range(0..n_zones));
    let zone = sequences[from].remove(pos);
    let to = rng.gen_range(0..sequences.len());
    let at = rng.gen_range(0..=sequences[to].len());
    sequences[to].insert(at, zone);
}

fn apply_swap(sequences: &mut [Vec<usize>], n_zones: usize, rng: &mut ChaCha8Rng) {
    let a = rng.gen_range(0..n_zones);
    let mut b = rng.gen_range(0..n_zones - 1);
    if b >= a {
        b += 1;
    }
    let (ra, pa) = locate(sequences, a);
    let (rb, pb) = locate(sequences, b);
    let za = sequences[ra][pa];
    sequences[ra][pa] = sequences[rb][pb];
    sequences[rb][pb] = za;
}

/// First-improvement local search over move and swap perturbations.
///
/// Each iteration perturbs a copy of the incumbent and keeps it only on a
/// strict decrease of the surrogate latency. Randomness comes from a
/// ChaCha8 stream seeded with `config.seed`. With fewer than two zones
/// nothing can improve and the initial assignment is returned untouched.
pub fn local_search(
    initial: &Assignment,
    tables: &CostTables,
    weights: &[f64],
    config: &SolverConfig,
) -> LocalSearchOutcome {
    let n_zones = tables.n_zones();
    let mut current = initial.clone();
    let mut trace = Vec::new();
    if n_zones < 2 {
        return LocalSearchOutcome { assignment: current, trace };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let iterations = config.ls_iterations;
    trace.reserve(iterations);
    for iteration in 0..iterations {
        let p_move = move_probability(config.ls_schedule, iteration, iterations, config.ls_period_fraction);
        let operator = if rng.gen::<f64>() < p_move { LsOperator::Move } else { LsOperator::Swap };
        let mut candidate = current.sequences.clone();
        match operator {
            LsOperator::Move => apply_move(&mut candidate, n_zones, &mut rng),
            LsOperator::Swap => apply_swap(&mut candidate, n_zones, &mut rng),
        }
        let cost = surrogate_latency(tables, weights, &candidate);
        let accepted = cost < current.surrogate_cost;
        if accepted {
            current = Assignment { sequences: candidate, surrogate_cost: cost };
        }
        trace.push(LsStep { iteration, operator, accepted, surrogate: current.surrogate_cost });
    }
    LocalSearchOutcome { assignment: current, trace }
}
