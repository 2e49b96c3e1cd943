//! Seeded random instances: block obstacles, rectangular zones, random starts.

use std::collections::VecDeque;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, ValidationError};
use crate::instance::{Cell, GridMap, Instance, SolverConfig, Zone};

const ZONE_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CostMode {
    Unit,
    /// Independent costs drawn from U(0.8, 1.2).
    Uniform,
}

impl FromStr for CostMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "unit" => Ok(Self::Unit),
            "uniform" | "uniform_0.8_1.2" => Ok(Self::Uniform),
            other => Err(format!("unknown cost mode {other:?} (expected unit or uniform)")),
        }
    }
}

fn blocks_connected(free: &[bool], bw: usize, bh: usize) -> bool {
    let Some(start) = free.iter().position(|&f| f) else {
        return false;
    };
    let mut seen = vec![false; free.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(i) = queue.pop_front() {
        let (x, y) = (i % bw, i / bw);
        let mut push = |j: usize| {
            if free[j] && !seen[j] {
                seen[j] = true;
                count += 1;
                queue.push_back(j);
            }
        };
        if x > 0 {
            push(i - 1);
        }
        if x + 1 < bw {
            push(i + 1);
        }
        if y > 0 {
            push(i - bw);
        }
        if y + 1 < bh {
            push(i + bw);
        }
    }
    count == free.iter().filter(|&&f| f).count()
}

/// Random instance, a pure function of its arguments.
///
/// About a tenth of the 2×2 blocks become obstacles, each kept only if the
/// free blocks stay connected. Zones are axis-aligned rectangles with sides
/// between 2 and a fifth of the shorter map side (at least 3), placed on
/// free cells without overlapping; every zone has weight 1. Robots start on
/// distinct free cells outside all zones.
pub fn generate_instance(
    seed: u64,
    width: usize,
    height: usize,
    n_zones: usize,
    n_robots: usize,
    cost_mode: CostMode,
) -> Result<Instance> {
    if width % 2 != 0 || height % 2 != 0 {
        return Err(ValidationError::OddDimensions { width, height }.into());
    }
    if width == 0 || height == 0 {
        return Err(ValidationError::TooSmall { width, height }.into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (bw, bh) = (width / 2, height / 2);
    let mut block_free = vec![true; bw * bh];
    let target = bw * bh / 10;
    let mut placed = 0;
    for _ in 0..target * 20 {
        if placed == target {
            break;
        }
        let b = rng.gen_range(0..bw * bh);
        if !block_free[b] {
            continue;
        }
        block_free[b] = false;
        if blocks_connected(&block_free, bw, bh) {
            placed += 1;
        } else {
            block_free[b] = true;
        }
    }
    let free: Vec<bool> = (0..width * height).map(|i| block_free[(i / width / 2) * bw + (i % width) / 2]).collect();
    let cost: Vec<f64> = free
        .iter()
        .map(|&f| match cost_mode {
            CostMode::Unit => 1.0,
            CostMode::Uniform if f => rng.gen_range(0.8..=1.2),
            CostMode::Uniform => 1.0,
        })
        .collect();
    let map = GridMap::new(width, height, free, cost)?;

    let max_side = (width.min(height) / 5).max(3);
    let mut taken = vec![false; width * height];
    let mut zones = Vec::with_capacity(n_zones);
    for id in 0..n_zones {
        let mut zone = None;
        for _ in 0..ZONE_ATTEMPTS {
            let zw = rng.gen_range(2..=max_side).min(width);
            let zh = rng.gen_range(2..=max_side).min(height);
            let x0 = rng.gen_range(0..=width - zw);
            let y0 = rng.gen_range(0..=height - zh);
            let cells: Vec<Cell> = (y0..y0 + zh).flat_map(|y| (x0..x0 + zw).map(move |x| Cell::new(x, y))).collect();
            if cells.iter().all(|&c| map.is_free(c) && !taken[map.index(c)]) {
                zone = Some(cells);
                break;
            }
        }
        let cells = zone.ok_or_else(|| Error::PlacementFailed(format!("zone {id} after {ZONE_ATTEMPTS} attempts")))?;
        for &c in &cells {
            taken[map.index(c)] = true;
        }
        zones.push(Zone::new(id as u32, 1.0, cells));
    }
    let robots = sample_starts(&map, &taken, n_robots, &mut rng)?;
    Instance::new(map, zones, robots, SolverConfig { seed, ..SolverConfig::default() })
}

fn sample_starts(map: &GridMap, taken: &[bool], n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Cell>> {
    let candidates: Vec<Cell> = map.free_cells().filter(|&c| !taken[map.index(c)]).collect();
    if candidates.len() < n {
        return Err(Error::PlacementFailed(format!("{n} robot starts requested, {} cells available", candidates.len())));
    }
    Ok(candidates.choose_multiple(rng, n).copied().collect())
}

/// The same map and zones with `n` fresh random starts.
pub fn resample_robots(instance: &Instance, n: usize, seed: u64) -> Result<Instance> {
    let map = &instance.map;
    let mut taken = vec![false; map.width() * map.height()];
    for z in &instance.zones {
        for &c in &z.cells {
            taken[map.index(c)] = true;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let robots = sample_starts(map, &taken, n, &mut rng)?;
    let config = SolverConfig { seed, ..instance.config.clone() };
    Instance::new(map.clone(), instance.zones.clone(), robots, config)
}
