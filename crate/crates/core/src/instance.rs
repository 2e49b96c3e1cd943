//! Problem instances: the grid map, prioritized zones, robot starts and the
//! solver configuration, plus the `.pamcpp.json` document format.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result, ValidationError};

/// A grid cell addressed as (column, row) with the origin at the top-left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Cell {
    pub x: usize,
    pub y: usize,
}

impl Cell {
    pub const fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }

    pub fn is_adjacent(self, other: Cell) -> bool {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y) == 1
    }

    pub fn manhattan(self, other: Cell) -> usize {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }
}

impl From<[usize; 2]> for Cell {
    fn from([x, y]: [usize; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Cell> for [usize; 2] {
    fn from(c: Cell) -> Self {
        [c.x, c.y]
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Occupancy grid with per-cell traversal costs.
///
/// Obstacles always fill whole 2×2 blocks aligned to even coordinates, and the
/// free cells form one 4-connected component.
#[derive(Clone, Debug, PartialEq)]
pub struct GridMap {
    width: usize,
    height: usize,
    free: Vec<bool>,
    cost: Vec<f64>,
}

impl GridMap {
    /// Builds a map from row-major occupancy and cost vectors. Costs of
    /// obstacle cells are ignored and stored as zero.
    pub fn new(width: usize, height: usize, free: Vec<bool>, cost: Vec<f64>) -> Result<Self> {
        if width % 2 != 0 || height % 2 != 0 {
            return Err(ValidationError::OddDimensions { width, height }.into());
        }
        if width == 0 || height == 0 {
            return Err(ValidationError::TooSmall { width, height }.into());
        }
        let n = width * height;
        if free.len() != n || cost.len() != n {
            return Err(Error::Internal(format!(
                "map vectors sized {}/{} for {n} cells",
                free.len(),
                cost.len()
            )));
        }
        let mut map = Self { width, height, free, cost };
        for by in (0..height).step_by(2) {
            for bx in (0..width).step_by(2) {
                let states = [(0, 0), (1, 0), (0, 1), (1, 1)]
                    .map(|(dx, dy)| map.is_free(Cell::new(bx + dx, by + dy)));
                if states.iter().any(|&s| s != states[0]) {
                    return Err(ValidationError::PartialBlock { x: bx, y: by }.into());
                }
            }
        }
        for i in 0..n {
            if map.free[i] {
                let c = map.cost[i];
                if !(c.is_finite() && c > 0.0) {
                    let cell = map.cell_at(i);
                    return Err(ValidationError::BadCost { x: cell.x, y: cell.y, cost: c }.into());
                }
            } else {
                map.cost[i] = 0.0;
            }
        }
        let Some(first) = map.free_cells().next() else {
            return Err(ValidationError::NoFreeCells.into());
        };
        if map.reachable_from(first).len() != map.free_count() {
            return Err(ValidationError::DisconnectedMap.into());
        }
        Ok(map)
    }

    /// An obstacle-free map with unit costs.
    pub fn open(width: usize, height: usize) -> Result<Self> {
        let n = width * height;
        Self::new(width, height, vec![true; n], vec![1.0; n])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x < self.width && c.y < self.height
    }

    pub fn index(&self, c: Cell) -> usize {
        c.y * self.width + c.x
    }

    pub fn cell_at(&self, i: usize) -> Cell {
        Cell::new(i % self.width, i / self.width)
    }

    pub fn is_free(&self, c: Cell) -> bool {
        self.contains(c) && self.free[self.index(c)]
    }

    /// Traversal cost of a free cell; zero for obstacles.
    pub fn cost(&self, c: Cell) -> f64 {
        self.cost[self.index(c)]
    }

    pub fn free_count(&self) -> usize {
        self.free.iter().filter(|&&f| f).count()
    }

    /// Free cells in row-major scan order.
    pub fn free_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.width * self.height)
            .filter(|&i| self.free[i])
            .map(|i| self.cell_at(i))
    }

    pub fn has_unit_costs(&self) -> bool {
        self.free_cells().all(|c| self.cost(c) == 1.0)
    }

    /// Free 4-neighbours in lexicographic (x, y) order.
    pub fn neighbors(&self, c: Cell) -> impl Iterator<Item = Cell> + '_ {
        let candidates = [
            (c.x.checked_sub(1), Some(c.y)),
            (Some(c.x), c.y.checked_sub(1)),
            (Some(c.x), Some(c.y + 1)),
            (Some(c.x + 1), Some(c.y)),
        ];
        candidates.into_iter().filter_map(move |(x, y)| {
            let cell = Cell::new(x?, y?);
            self.is_free(cell).then_some(cell)
        })
    }

    fn reachable_from(&self, start: Cell) -> HashSet<Cell> {
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for n in self.neighbors(c) {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen
    }
}

/// A prioritized zone: a connected set of free cells with a positive weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Zone {
    pub id: u32,
    pub weight: f64,
    /// Sorted and deduplicated.
    pub cells: Vec<Cell>,
}

impl Zone {
    pub fn new(id: u32, weight: f64, cells: impl IntoIterator<Item = Cell>) -> Self {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        Self { id, weight, cells: cells.into_iter().collect() }
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    fn is_connected(&self) -> bool {
        let Some(&first) = self.cells.first() else {
            return false;
        };
        let members: HashSet<Cell> = self.cells.iter().copied().collect();
        let mut seen = HashSet::from([first]);
        let mut queue = VecDeque::from([first]);
        while let Some(c) = queue.pop_front() {
            let around = [
                (c.x.wrapping_sub(1), c.y),
                (c.x + 1, c.y),
                (c.x, c.y.wrapping_sub(1)),
                (c.x, c.y + 1),
            ];
            for (x, y) in around {
                let n = Cell::new(x, y);
                if members.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == members.len()
    }
}

/// Operator selection schedule for local search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    #[default]
    Cosine,
    Static,
}

impl std::str::FromStr for Schedule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "cosine" => Ok(Self::Cosine),
            "static" => Ok(Self::Static),
            other => Err(format!("unknown schedule {other:?} (expected cosine|static)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub seed: u64,
    pub ls_iterations: usize,
    pub ls_schedule: Schedule,
    pub ls_period_fraction: f64,
    /// Append a return leg so every path ends at its start cell.
    pub closed_tour: bool,
    /// Plan grid-level legs and workload balance with cell costs instead of
    /// step counts. Reported metrics are always in timesteps.
    pub weighted_time: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            ls_iterations: 1000,
            ls_schedule: Schedule::Cosine,
            ls_period_fraction: 0.1,
            closed_tour: false,
            weighted_time: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let f = self.ls_period_fraction;
        if !(f > 0.0 && f <= 1.0) {
            return Err(ValidationError::BadPeriodFraction(f).into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub map: GridMap,
    pub zones: Vec<Zone>,
    pub robots: Vec<Cell>,
    pub config: SolverConfig,
}

impl Instance {
    /// Validates zones, robots and config against `map`.
    pub fn new(map: GridMap, zones: Vec<Zone>, robots: Vec<Cell>, config: SolverConfig) -> Result<Self> {
        config.validate()?;
        let mut ids = HashSet::new();
        let mut owner: std::collections::HashMap<Cell, u32> = std::collections::HashMap::new();
        for zone in &zones {
            if !ids.insert(zone.id) {
                return Err(ValidationError::DuplicateZoneId(zone.id).into());
            }
            if zone.cells.is_empty() {
                return Err(ValidationError::EmptyZone(zone.id).into());
            }
            if !(zone.weight.is_finite() && zone.weight > 0.0) {
                return Err(ValidationError::BadWeight { id: zone.id, weight: zone.weight }.into());
            }
            for &c in &zone.cells {
                if !map.is_free(c) {
                    return Err(ValidationError::ZoneCellNotFree { id: zone.id, x: c.x, y: c.y }.into());
                }
            }
            if !zone.is_connected() {
                return Err(ValidationError::DisconnectedZone(zone.id).into());
            }
            for &c in &zone.cells {
                if let Some(&other) = owner.get(&c) {
                    return Err(ValidationError::OverlappingZones(other, zone.id).into());
                }
                owner.insert(c, zone.id);
            }
        }
        if robots.is_empty() {
            return Err(ValidationError::NoRobots.into());
        }
        let mut starts = HashSet::new();
        for (robot, &c) in robots.iter().enumerate() {
            if !map.is_free(c) {
                return Err(ValidationError::RobotNotFree { robot, x: c.x, y: c.y }.into());
            }
            if !starts.insert(c) {
                return Err(ValidationError::DuplicateRobotStart { x: c.x, y: c.y }.into());
            }
        }
        Ok(Self { map, zones, robots, config })
    }

    pub fn weights(&self) -> Vec<f64> {
        self.zones.iter().map(|z| z.weight).collect()
    }

    /// Parses and validates a `.pamcpp.json` document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
        doc.into_instance()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&InstanceDoc::from_instance(self))
            .expect("instance documents always serialize");
        s.push('\n');
        s
    }

    /// Hex SHA-256 of the canonical compact document.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_vec(&InstanceDoc::from_instance(self))
            .expect("instance documents always serialize");
        hex::encode(Sha256::digest(&canonical))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    width: usize,
    height: usize,
    rows: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cell_costs: Option<Vec<f64>>,
    zones: Vec<Zone>,
    robots: Vec<Cell>,
    #[serde(default)]
    config: SolverConfig,
}

impl InstanceDoc {
    fn from_instance(inst: &Instance) -> Self {
        let map = &inst.map;
        let rows = (0..map.height())
            .map(|y| {
                (0..map.width())
                    .map(|x| if map.is_free(Cell::new(x, y)) { '.' } else { '#' })
                    .collect()
            })
            .collect();
        let cell_costs =
            (!map.has_unit_costs()).then(|| map.free_cells().map(|c| map.cost(c)).collect());
        Self {
            width: map.width(),
            height: map.height(),
            rows,
            cell_costs,
            zones: inst.zones.clone(),
            robots: inst.robots.clone(),
            config: inst.config.clone(),
        }
    }

    fn into_instance(self) -> Result<Instance> {
        let (width, height) = (self.width, self.height);
        if width % 2 != 0 || height % 2 != 0 {
            return Err(ValidationError::OddDimensions { width, height }.into());
        }
        if self.rows.len() != height {
            return Err(ValidationError::RowCount { expected: height, found: self.rows.len() }.into());
        }
        let mut free = Vec::with_capacity(width * height);
        for (row, line) in self.rows.iter().enumerate() {
            let len = line.chars().count();
            if len != width {
                return Err(ValidationError::RowLength { row, expected: width, found: len }.into());
            }
            for ch in line.chars() {
                match ch {
                    '.' => free.push(true),
                    '#' => free.push(false),
                    ch => return Err(ValidationError::BadCellChar { row, ch }.into()),
                }
            }
        }
        let mut cost = vec![0.0; width * height];
        let n_free = free.iter().filter(|&&f| f).count();
        match self.cell_costs {
            None => free.iter().zip(cost.iter_mut()).for_each(|(&f, c)| *c = if f { 1.0 } else { 0.0 }),
            Some(list) => {
                if list.len() != n_free {
                    return Err(ValidationError::CostCount { expected: n_free, found: list.len() }.into());
                }
                let slots = free.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i);
                for (i, c) in slots.zip(list) {
                    cost[i] = c;
                }
            }
        }
        let map = GridMap::new(width, height, free, cost)?;
        let zones = self.zones.into_iter().map(|z| Zone::new(z.id, z.weight, z.cells)).collect();
        Instance::new(map, zones, self.robots, self.config)
    }
}
